//! Gröbner bases by multi-modular reconstruction.
//!
//! Reduced bases are computed over 𝔽_p for large word-size primes, lifted by
//! Chinese remaindering and rational reconstruction, and accepted only once
//! the lift is verified over ℚ to be a Gröbner basis containing every input.
//! The reverse containment holds whenever the primes used are lucky, which
//! fails only for primes dividing finitely many integers attached to the input.

use std::cmp::Ordering;

use num_traits::Zero;

use super::buchberger::{insert, verify_groebner, CancelToken, GroebnerBasis, Leading, Pair};
use super::order::MonomialOrder;
use crate::arith::fp::{inv_mod, mul_mod, sub_mod};
use crate::arith::modular::{large_primes, Reconstructor};
use crate::arith::{rat_mod_p, Monomial, MultiPoly};
use crate::error::Result;

/// Primes tried before giving up on reconstruction.
const MAX_PRIMES: usize = 64;

/// Monic polynomial over 𝔽_p, terms sorted increasing.
struct PPoly(Vec<(Monomial, u64)>);

impl Leading for PPoly {
    fn leading(&self) -> &Monomial {
        &self.0.last().expect("nonzero").0
    }
}

impl PPoly {
    fn make_monic(&mut self, p: u64) {
        if let Some(&(_, lc)) = self.0.last() {
            let inv = inv_mod(lc, p);
            for (_, c) in self.0.iter_mut() {
                *c = mul_mod(*c, inv, p);
            }
        }
    }
}

/// `f − b·(m·g)` over 𝔽_p, both sorted increasing.
fn axpy(f: &[(Monomial, u64)], g: &[(Monomial, u64)], b: u64, m: &Monomial, order: &MonomialOrder, p: u64) -> Vec<(Monomial, u64)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < f.len() || j < g.len() {
        let gm = g.get(j).map(|(gm, _)| gm.mul(m));
        let ord = match (f.get(i), &gm) {
            (Some(ft), Some(gm)) => order.cmp(&ft.0, gm),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(f[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm.unwrap(), sub_mod(0, mul_mod(g[j].1, b, p), p)));
                j += 1;
            }
            Ordering::Equal => {
                let c = sub_mod(f[i].1, mul_mod(g[j].1, b, p), p);
                if c != 0 {
                    out.push((f[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn reduce(f: Vec<(Monomial, u64)>, basis: &[&PPoly], order: &MonomialOrder, p: u64) -> PPoly {
    let mut f = f;
    let mut r = Vec::new();
    while let Some(&(m, c)) = f.last() {
        f.pop();
        match basis.iter().find(|g| g.leading().divides(&m)) {
            Some(g) => {
                let q = g.leading().quotient(&m);
                f = axpy(&f, &g.0[..g.0.len() - 1], c, &q, order, p);
            }
            None => r.push((m, c)),
        }
    }
    r.reverse();
    let mut out = PPoly(r);
    out.make_monic(p);
    out
}

fn s_poly(f: &PPoly, g: &PPoly, order: &MonomialOrder, p: u64) -> Vec<(Monomial, u64)> {
    let l = f.leading().lcm(g.leading());
    let mf = f.leading().quotient(&l);
    let mg = g.leading().quotient(&l);
    let ft: Vec<(Monomial, u64)> = f.0[..f.0.len() - 1].iter().map(|(m, c)| (m.mul(&mf), *c)).collect();
    axpy(&ft, &g.0[..g.0.len() - 1], 1, &mg, order, p)
}

/// Reduced Gröbner basis of the image of `gens` over 𝔽_p, sorted by leading
/// monomial; `None` if a coefficient denominator vanishes mod p.
fn groebner_mod_p(gens: &[MultiPoly], order: &MonomialOrder, p: u64, cancel: &CancelToken) -> Result<Option<Vec<PPoly>>> {
    let mut input = Vec::new();
    for g in gens {
        let mut t = Vec::new();
        for (m, c) in g.terms() {
            let Some(v) = rat_mod_p(c, p) else { return Ok(None) };
            if v != 0 {
                t.push((*m, v));
            }
        }
        if t.is_empty() {
            continue;
        }
        t.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let mut q = PPoly(t);
        q.make_monic(p);
        input.push(q);
    }
    input.sort_by(|a, b| order.cmp(a.leading(), b.leading()));

    let mut polys: Vec<PPoly> = Vec::new();
    let mut sugar = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in input {
        let s = g.0.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let act: Vec<&PPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = reduce(g.0, &act, order, p);
        if !h.0.is_empty() {
            insert(&mut polys, &mut sugar, &mut active, &mut pairs, h, s);
        }
    }
    while !pairs.is_empty() {
        cancel.check()?;
        let best = (0..pairs.len())
            .min_by(|&a, &b| pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm)))
            .unwrap();
        let pr = pairs.swap_remove(best);
        let s = s_poly(&polys[pr.i], &polys[pr.j], order, p);
        let act: Vec<&PPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = reduce(s, &act, order, p);
        if h.0.is_empty() {
            continue;
        }
        if h.leading().is_one() {
            return Ok(Some(vec![PPoly(vec![(Monomial::one(), 1)])]));
        }
        insert(&mut polys, &mut sugar, &mut active, &mut pairs, h, pr.sugar);
    }
    let mut basis: Vec<PPoly> = active.iter().map(|&k| PPoly(polys[k].0.clone())).collect();
    basis.sort_by(|a, b| order.cmp(a.leading(), b.leading()));
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<&PPoly> = basis.iter().enumerate().filter(|&(o, _)| o != k).map(|(_, q)| q).collect();
        let lead = *basis[k].leading();
        // keep the monic leading term, reduce the tail
        let tail = basis[k].0[..basis[k].0.len() - 1].to_vec();
        let mut t = reduce_tail(tail, &others, order, p);
        t.push((lead, 1));
        reduced.push(PPoly(t));
    }
    Ok(Some(reduced))
}

/// Full reduction without normalising (the tail of a monic element).
fn reduce_tail(f: Vec<(Monomial, u64)>, basis: &[&PPoly], order: &MonomialOrder, p: u64) -> Vec<(Monomial, u64)> {
    let mut f = f;
    let mut r = Vec::new();
    while let Some(&(m, c)) = f.last() {
        f.pop();
        match basis.iter().find(|g| g.leading().divides(&m)) {
            Some(g) => {
                let q = g.leading().quotient(&m);
                f = axpy(&f, &g.0[..g.0.len() - 1], c, &q, order, p);
            }
            None => r.push((m, c)),
        }
    }
    r.reverse();
    r
}

/// Reduced Gröbner basis over ℚ by multi-modular lifting, or `None` if the
/// lift has not been verified within the prime budget.
pub(super) fn groebner_multimodular(
    gens: &[MultiPoly],
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<Option<GroebnerBasis>> {
    let vars: Vec<String> = gens.first().map(|g| g.vars().to_vec()).unwrap_or_default();
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut shape: Option<Vec<Vec<Monomial>>> = None;
    let mut rec = Reconstructor::new();
    let mut previous = None;
    for p in large_primes().take(MAX_PRIMES) {
        let Some(basis) = groebner_mod_p(gens, order, p, cancel)? else { continue };
        let this_shape: Vec<Vec<Monomial>> = basis.iter().map(|g| g.0.iter().map(|(m, _)| *m).collect()).collect();
        if shape.as_ref() != Some(&this_shape) {
            // a different support means one of the primes was unlucky; start over
            log::debug!("modular basis shape changed at p = {p}");
            shape = Some(this_shape);
            rec = Reconstructor::new();
            previous = None;
        }
        let image: Vec<u64> = basis.iter().flat_map(|g| g.0.iter().map(|(_, c)| *c)).collect();
        rec.add(p, &image);
        let Some(values) = rec.reconstruct() else { continue };
        if previous.as_ref() == Some(&values) {
            let shape = shape.as_ref().unwrap();
            let mut it = values.iter();
            let polys: Vec<MultiPoly> = shape
                .iter()
                .map(|supp| {
                    MultiPoly::from_terms(&var_refs, supp.iter().map(|m| (*m, it.next().unwrap().clone())).filter(|(_, c)| !c.is_zero()))
                })
                .collect();
            if verify_groebner(&polys, gens, order, cancel)? {
                return Ok(Some(GroebnerBasis { polys, order: order.clone(), vars }));
            }
            log::debug!("lifted basis failed verification at p = {p}");
        }
        previous = Some(values);
    }
    Ok(None)
}
