//! Dense linear algebra over ℚ: incremental echelon forms, linear solves,
//! and minimal polynomials by Krylov iteration.

use num_traits::{One, Zero};

use super::{Rat, UniPoly};

/// Row-echelon basis built one vector at a time; each stored row remembers
/// which combination of the inserted vectors produced it.
pub struct IncrementalEchelon {
    dim: usize,
    rows: Vec<(usize, Vec<Rat>, Vec<Rat>)>,
    inserted: usize,
}

impl IncrementalEchelon {
    pub fn new(dim: usize) -> Self {
        IncrementalEchelon { dim, rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis. Returns `None` if independent (and keeps
    /// it), or `Some(c)` with `v = Σ c_i · (i-th inserted vector)`.
    pub fn insert(&mut self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.dim);
        let k = self.inserted;
        self.inserted += 1;
        let mut w = v.to_vec();
        // combination expressing w in terms of inserted vectors, with w = v − Σ …
        let mut comb = vec![Rat::zero(); k + 1];
        comb[k] = Rat::one();
        for (pivot, row, rc) in &self.rows {
            if w[*pivot].is_zero() {
                continue;
            }
            let f = w[*pivot].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *wi -= &f * ri;
                }
            }
            for (ci, ri) in comb.iter_mut().zip(rc) {
                if !ri.is_zero() {
                    *ci -= &f * ri;
                }
            }
        }
        match w.iter().position(|c| !c.is_zero()) {
            Some(p) => {
                let inv = w[p].recip();
                for wi in w.iter_mut() {
                    *wi *= &inv;
                }
                for ci in comb.iter_mut() {
                    *ci *= &inv;
                }
                // keep earlier rows reduced at the new pivot
                for (_, row, rc) in self.rows.iter_mut() {
                    if row[p].is_zero() {
                        continue;
                    }
                    let f = row[p].clone();
                    for (ri, wi) in row.iter_mut().zip(&w) {
                        if !wi.is_zero() {
                            *ri -= &f * wi;
                        }
                    }
                    rc.resize(k + 1, Rat::zero());
                    for (ri, ci) in rc.iter_mut().zip(&comb) {
                        if !ci.is_zero() {
                            *ri -= &f * ci;
                        }
                    }
                }
                self.rows.push((p, w, comb));
                None
            }
            None => {
                // 0 = v − Σ_{i<k} (−comb_i) v_i
                Some(comb[..k].iter().map(|c| -c).collect())
            }
        }
    }
}

/// Minimal polynomial of the linear map `apply` restricted to the cyclic
/// subspace generated by `v0`. Also returns the Krylov vectors `v0, Av0, …`.
pub fn krylov_min_poly(
    v0: Vec<Rat>,
    mut apply: impl FnMut(&[Rat]) -> Vec<Rat>,
) -> (UniPoly, Vec<Vec<Rat>>) {
    let mut ech = IncrementalEchelon::new(v0.len());
    let mut powers = vec![v0];
    loop {
        let last = powers.last().unwrap().clone();
        if let Some(c) = ech.insert(&last) {
            let k = powers.len() - 1;
            // A^k v0 = Σ c_i A^i v0
            let mut coeffs: Vec<Rat> = c.iter().map(|x| -x).collect();
            coeffs.push(Rat::one());
            powers.truncate(k);
            debug_assert_eq!(coeffs.len(), k + 1);
            return (UniPoly::new(coeffs), powers);
        }
        let next = apply(&last);
        powers.push(next);
    }
}

/// Solves `Σ_j x_j · cols[j] = rhs`; `None` if inconsistent. Free variables are set to 0.
pub fn solve_columns(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let mut ech = IncrementalEchelon::new(rhs.len());
    for c in cols {
        ech.insert(c);
    }
    // dependent columns never appear in a combination, so they get weight 0
    ech.insert(rhs)
}

/// `m · v` for a dense square matrix stored by rows.
pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            let mut s = Rat::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    s += a * b;
                }
            }
            s
        })
        .collect()
}
