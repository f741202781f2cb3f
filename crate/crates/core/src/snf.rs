//! Integer Smith normal form with the unimodular transforms kept.

/// `u · m · v = d` with `u`, `v` unimodular and `d` diagonal, `d[i][i] | d[i+1][i+1]`,
/// diagonal entries non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<i64>>,
    pub d: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len()))).map(|i| self.d[i][i]).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        (sign * a[n - 1][n - 1]) as i64
    }
}

/// Smith normal form of an `rows × cols` matrix (`cols` given so empty inputs work).
pub fn smith_normal_form(m: &[Vec<i64>], cols: usize) -> SmithForm {
    let rows = m.len();
    let mut d: Vec<Vec<i64>> = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero |entry| in the trailing block
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| d[i][j].unsigned_abs())
        else {
            break;
        };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..rows {
            let q = d[i][t].div_euclid(d[t][t]);
            if q != 0 {
                for j in 0..cols {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
            }
            dirty |= d[i][t] != 0;
        }
        for j in t + 1..cols {
            let q = d[t][j].div_euclid(d[t][t]);
            if q != 0 {
                for row in d.iter_mut() {
                    row[j] -= q * row[t];
                }
                for row in v.iter_mut() {
                    row[j] -= q * row[t];
                }
            }
            dirty |= d[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // pivot must divide the whole trailing block
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % d[t][t] != 0));
        if let Some(i) = bad {
            for j in 0..cols {
                d[t][j] += d[i][j];
            }
            for j in 0..rows {
                u[t][j] += u[i][j];
            }
            continue;
        }
        if d[t][t] < 0 {
            for j in 0..cols {
                d[t][j] = -d[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    SmithForm { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_two_row_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let k = rng.gen_range(1..=5);
            let m: Vec<Vec<i64>> = (0..2).map(|_| (0..k).map(|_| rng.gen_range(-12..=12)).collect()).collect();
            let s = smith_normal_form(&m, k);
            assert_eq!(det(&s.u).abs(), 1);
            assert_eq!(det(&s.v).abs(), 1);
            let prod = mat_mul(&mat_mul(&s.u, &m, 2, k), &s.v, k, k);
            assert_eq!(prod, s.d);
            for i in 0..2 {
                for j in 0..k {
                    if i != j {
                        assert_eq!(s.d[i][j], 0);
                    }
                }
            }
            let diag = s.diagonal();
            for w in diag.windows(2) {
                assert!(w[0] >= 0 && w[1] >= 0);
                if w[0] != 0 {
                    assert_eq!(w[1] % w[0], 0);
                } else {
                    assert_eq!(w[1], 0);
                }
            }
        }
    }

    #[test]
    fn known_form() {
        let s = smith_normal_form(&[vec![2, 4], vec![6, 8]], 2);
        assert_eq!(s.diagonal(), vec![2, 4]);
    }
}
