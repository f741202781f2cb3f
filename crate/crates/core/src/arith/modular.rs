//! Multi-modular reconstruction: Chinese remaindering of word-size images
//! and rational reconstruction. Callers must verify reconstructed values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::{inv_mod, mul_mod, sub_mod};
use super::{is_prime, Rat};

/// Primes just below 2⁶², in decreasing order.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

/// Smallest-magnitude `a/b ≡ r (mod m)` with |a|, b ≤ √(m/2).
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Accumulates residue vectors modulo a growing product of primes.
pub struct Reconstructor {
    modulus: BigInt,
    residues: Vec<BigInt>,
}

impl Default for Reconstructor {
    fn default() -> Self {
        Self::new()
    }
}

impl Reconstructor {
    pub fn new() -> Self {
        Reconstructor { modulus: BigInt::one(), residues: Vec::new() }
    }

    pub fn add(&mut self, p: u64, image: &[u64]) {
        if self.residues.is_empty() {
            self.residues = image.iter().map(|&v| BigInt::from(v)).collect();
            self.modulus = BigInt::from(p);
            return;
        }
        assert_eq!(image.len(), self.residues.len(), "image length changed");
        let pb = BigInt::from(p);
        let m_mod_p = self.modulus.mod_floor(&pb).to_u64().unwrap();
        let inv = inv_mod(m_mod_p, p);
        for (r, &v) in self.residues.iter_mut().zip(image) {
            // r' = r + m·((v − r)·m⁻¹ mod p)
            let r_mod_p = r.mod_floor(&pb).to_u64().unwrap();
            let t = mul_mod(sub_mod(v, r_mod_p, p), inv, p);
            *r += &self.modulus * t;
        }
        self.modulus *= pb;
    }

    pub fn reconstruct(&self) -> Option<Vec<Rat>> {
        self.residues.iter().map(|r| rational_reconstruct(r, &self.modulus)).collect()
    }
}

/// Solves `K·X = R` modulo `p` where `K` (given by columns, rows ≥ columns)
/// has full column rank; `rhs` holds the right-hand sides as columns.
/// `None` if `K` is rank deficient or some system is inconsistent.
pub fn solve_mod_p(cols: &[Vec<u64>], rhs: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = cols.len();
    let rows = cols.first().map_or(0, |c| c.len());
    let k = rhs.len();
    // augmented rows [K | R]
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[i]).collect();
            row.extend(rhs.iter().map(|c| c[i]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..rows).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p);
        for v in a[col].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if *y != 0 {
                    *x = sub_mod(*x, mul_mod(f, *y, p), p);
                }
            }
        }
    }
    if a[n..].iter().any(|row| row[n..].iter().any(|&v| v != 0)) {
        return None;
    }
    Some((0..k).map(|j| (0..n).map(|i| a[i][n + j]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_mod_p};

    #[test]
    fn reconstructs_small_fractions() {
        let vals = [rat(-3, 7), rat(22, 5), rat(0, 1), rat(-1234567, 89)];
        let mut rec = Reconstructor::new();
        for p in large_primes().take(2) {
            let img: Vec<u64> = vals.iter().map(|v| rat_mod_p(v, p).unwrap()).collect();
            rec.add(p, &img);
        }
        assert_eq!(rec.reconstruct().unwrap(), vals.to_vec());
    }

    #[test]
    fn modular_solve() {
        let p = 1_000_000_007;
        // [[2,1],[1,3]] x = [3, 5] → x = (4/5, 7/5)
        let x = solve_mod_p(&[vec![2, 1], vec![1, 3]], &[vec![3, 5]], p).unwrap();
        assert_eq!(x[0][0], rat_mod_p(&rat(4, 5), p).unwrap());
        assert_eq!(x[0][1], rat_mod_p(&rat(7, 5), p).unwrap());
        assert!(solve_mod_p(&[vec![1, 2], vec![2, 4]], &[vec![1, 1]], p).is_none());
        // tall consistent and inconsistent systems
        let x = solve_mod_p(&[vec![1, 0, 1]], &[vec![2, 0, 2]], p).unwrap();
        assert_eq!(x[0], vec![2]);
        assert!(solve_mod_p(&[vec![1, 0, 1]], &[vec![2, 0, 3]], p).is_none());
    }
}
