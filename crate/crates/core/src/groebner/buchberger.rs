//! Buchberger's algorithm over ℚ, run on primitive integer polynomials.
//!
//! Pairs are chosen by sugar degree and pruned with the Gebauer–Möller
//! criteria. The returned basis is reduced and monic.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fglm::fglm;
use super::modular::groebner_multimodular;
use super::order::{MonomialOrder, OrderKind};
use super::solve::is_zero_dimensional;
use crate::arith::{Monomial, MultiPoly, Rat};
use crate::error::{Error, Result};

/// Cooperative cancellation flag shared between a caller and long computations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, AtomicOrdering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(AtomicOrdering::Relaxed)
    }

    pub fn check(&self) -> Result<()> {
        if self.is_cancelled() {
            Err(Error::Cancelled)
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Reduced, monic, sorted by increasing leading monomial.
    pub polys: Vec<MultiPoly>,
    pub order: MonomialOrder,
    pub vars: Vec<String>,
}

impl GroebnerBasis {
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant() && !self.polys[0].is_zero()
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| leading_monomial(p, &self.order)).collect()
    }

    /// Polynomials of the basis involving only variable `v`.
    pub fn univariate_in(&self, v: usize) -> Vec<&MultiPoly> {
        self.polys.iter().filter(|p| p.support().iter().all(|&i| i == v)).collect()
    }
}

pub fn leading_monomial(p: &MultiPoly, order: &MonomialOrder) -> Monomial {
    p.terms()
        .map(|(m, _)| *m)
        .max_by(|a, b| order.cmp(a, b))
        .unwrap_or_else(Monomial::one)
}

/// Sparse polynomial with integer coefficients, terms in increasing order.
#[derive(Clone, Debug)]
struct IPoly {
    t: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    fn from_multi(p: &MultiPoly, order: &MonomialOrder) -> IPoly {
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut t: Vec<(Monomial, BigInt)> =
            p.terms().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))).collect();
        t.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let mut q = IPoly { t };
        q.make_primitive();
        q
    }

    fn to_multi(&self, vars: &[&str]) -> MultiPoly {
        let lc = Rat::from(self.t.last().expect("nonzero").1.clone());
        MultiPoly::from_terms(vars, self.t.iter().map(|(m, c)| (*m, Rat::from(c.clone()) / &lc)))
    }

    fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.t.last().expect("nonzero").0
    }

    fn lc(&self) -> &BigInt {
        &self.t.last().expect("nonzero").1
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.t {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    fn make_primitive(&mut self) {
        if self.t.is_empty() {
            return;
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.t.iter_mut() {
                *c /= &g;
            }
        }
    }
}

/// `a·f − b·(m·g)`, both inputs sorted increasing.
fn lin_comb(
    f: &[(Monomial, BigInt)],
    a: &BigInt,
    g: &[(Monomial, BigInt)],
    b: &BigInt,
    m: &Monomial,
    order: &MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    while i < f.len() || j < g.len() {
        let gm = g.get(j).map(|(gm, _)| gm.mul(m));
        let ord = match (f.get(i), &gm) {
            (Some(ft), Some(gm)) => order.cmp(&ft.0, gm),
            (Some(_), None) => Ordering::Less,
            (None, _) => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                let c = if a_one { f[i].1.clone() } else { &f[i].1 * a };
                out.push((f[i].0, c));
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm.unwrap(), -(&g[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let c = if a_one { f[i].1.clone() } else { &f[i].1 * a } - &g[j].1 * b;
                if !c.is_zero() {
                    out.push((f[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Fully reduces `f` modulo `basis`; the result is a nonzero rational multiple
/// of the true normal form, made primitive.
fn reduce(f: &IPoly, basis: &[&IPoly], order: &MonomialOrder) -> IPoly {
    let mut p = f.t.clone();
    // remainder terms, collected in decreasing order
    let mut r: Vec<(Monomial, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while let Some((m, c)) = p.last().cloned() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let lc = g.lc();
                let gg = lc.gcd(&c);
                let a = lc / &gg;
                let b = &c / &gg;
                let q = g.lm().quotient(&m);
                p.pop();
                let gt = &g.t[..g.t.len() - 1];
                p = lin_comb(&p, &a, gt, &b, &q, order);
                if !a.is_one() {
                    for (_, rc) in r.iter_mut() {
                        *rc *= &a;
                    }
                }
                steps += 1;
                if steps % 8 == 0 {
                    shrink(&mut p, &mut r);
                }
            }
            None => {
                p.pop();
                r.push((m, c));
            }
        }
    }
    r.reverse();
    let mut out = IPoly { t: r };
    out.make_primitive();
    out
}

/// Removes the common content of the pending part and the remainder.
fn shrink(p: &mut [(Monomial, BigInt)], r: &mut [(Monomial, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in p.iter().chain(r.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in p.iter_mut().chain(r.iter_mut()) {
        *c /= &g;
    }
}

fn s_poly_int(f: &IPoly, g: &IPoly, order: &MonomialOrder) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient(&l);
    let mg = g.lm().quotient(&l);
    let gg = f.lc().gcd(g.lc());
    let a = g.lc() / &gg;
    let b = f.lc() / &gg;
    // a·mf·f − b·mg·g; leading terms cancel
    let ft: Vec<(Monomial, BigInt)> = f.t[..f.t.len() - 1].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let gt = &g.t[..g.t.len() - 1];
    let mut q = IPoly { t: lin_comb(&ft, &a, gt, &b, &mg, order) };
    q.make_primitive();
    q
}

pub(super) struct Pair {
    pub(super) i: usize,
    pub(super) j: usize,
    pub(super) lcm: Monomial,
    pub(super) sugar: u32,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder) -> GroebnerBasis {
    buchberger_with_cancel(gens, order, &CancelToken::new()).expect("no cancellation requested")
}

/// Lex bases are reached through a grevlex basis: by FGLM when the ideal is
/// zero-dimensional, otherwise by rerunning Buchberger from the grevlex basis.
pub fn buchberger_with_cancel(
    gens: &[MultiPoly],
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<GroebnerBasis> {
    if order.kind == OrderKind::Grevlex {
        return buchberger_graded(gens, order, cancel);
    }
    let graded = MonomialOrder::with_priority(OrderKind::Grevlex, order.priority.clone());
    let gb = buchberger_graded(gens, &graded, cancel)?;
    if is_zero_dimensional(&gb) {
        fglm(&gb, order, cancel)
    } else {
        buchberger_direct(&gb.polys, order, cancel)
    }
}

/// Multi-modular first; exact Buchberger if the lift cannot be verified.
fn buchberger_graded(gens: &[MultiPoly], order: &MonomialOrder, cancel: &CancelToken) -> Result<GroebnerBasis> {
    match groebner_multimodular(gens, order, cancel)? {
        Some(gb) => Ok(gb),
        None => buchberger_direct(gens, order, cancel),
    }
}

/// Checks over ℚ that `basis` is a Gröbner basis (Buchberger's criterion,
/// skipping coprime leading monomials) whose ideal contains every input.
pub(super) fn verify_groebner(
    basis: &[MultiPoly],
    gens: &[MultiPoly],
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<bool> {
    let b: Vec<IPoly> = basis.iter().filter(|g| !g.is_zero()).map(|g| IPoly::from_multi(g, order)).collect();
    let refs: Vec<&IPoly> = b.iter().collect();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            cancel.check()?;
            if b[i].lm().coprime(b[j].lm()) {
                continue;
            }
            if !reduce(&s_poly_int(&b[i], &b[j], order), &refs, order).is_zero() {
                return Ok(false);
            }
        }
    }
    for g in gens.iter().filter(|g| !g.is_zero()) {
        cancel.check()?;
        if !reduce(&IPoly::from_multi(g, order), &refs, order).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn buchberger_direct(gens: &[MultiPoly], order: &MonomialOrder, cancel: &CancelToken) -> Result<GroebnerBasis> {
    cancel.check()?;
    let vars: Vec<String> = gens.first().map(|g| g.vars().to_vec()).unwrap_or_default();
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    assert!(gens.iter().all(|g| g.vars() == vars.as_slice()), "generators over a common ring");
    let mut polys: Vec<IPoly> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<IPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| IPoly::from_multi(g, order))
        .collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for g in input {
        let act: Vec<&IPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = reduce(&g, &act, order);
        if h.is_zero() {
            continue;
        }
        let s = h.t.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        insert(&mut polys, &mut sugar, &mut active, &mut pairs, h, s);
    }

    while !pairs.is_empty() {
        cancel.check()?;
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a].sugar.cmp(&pairs[b].sugar).then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .unwrap();
        let pr = pairs.swap_remove(best);
        let s = s_poly_int(&polys[pr.i], &polys[pr.j], order);
        if s.is_zero() {
            continue;
        }
        let act: Vec<&IPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = reduce(&s, &act, order);
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            let one = MultiPoly::constant(&var_refs, Rat::one());
            return Ok(GroebnerBasis { polys: vec![one], order: order.clone(), vars });
        }
        insert(&mut polys, &mut sugar, &mut active, &mut pairs, h, pr.sugar);
    }

    // interreduce: active leading monomials are already pairwise non-dividing
    let mut basis: Vec<IPoly> = active.iter().map(|&k| polys[k].clone()).collect();
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<&IPoly> = basis.iter().enumerate().filter(|&(o, _)| o != k).map(|(_, p)| p).collect();
        reduced.push(reduce(&basis[k], &others, order));
    }
    let polys = reduced.iter().map(|p| p.to_multi(&var_refs)).collect();
    Ok(GroebnerBasis { polys, order: order.clone(), vars })
}

/// Anything with a leading monomial, so pair bookkeeping is shared between
/// the exact and the modular engines.
pub(super) trait Leading {
    fn leading(&self) -> &Monomial;
}

impl Leading for IPoly {
    fn leading(&self) -> &Monomial {
        self.lm()
    }
}

/// Adds `h` to the basis, updating pairs with the Gebauer–Möller criteria.
pub(super) fn insert<P: Leading>(
    polys: &mut Vec<P>,
    sugar: &mut Vec<u32>,
    active: &mut Vec<usize>,
    pairs: &mut Vec<Pair>,
    h: P,
    h_sugar: u32,
) {
    let hi = polys.len();
    let hlm = *h.leading();
    polys.push(h);
    sugar.push(h_sugar);

    let pair_sugar = |g: usize, l: &Monomial| -> u32 {
        let sg = sugar[g] + l.degree() - polys[g].leading().degree();
        let sh = h_sugar + l.degree() - hlm.degree();
        sg.max(sh)
    };

    // candidate new pairs (h, g)
    let cands: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&g| {
            let glm = polys[g].leading();
            (g, hlm.lcm(glm), hlm.coprime(glm))
        })
        .collect();
    let mut keep = vec![true; cands.len()];
    // chain criterion among new pairs: drop (h,g1) if some other lcm(h,g2) properly divides it
    for a in 0..cands.len() {
        if cands[a].2 {
            continue;
        }
        for b in 0..cands.len() {
            if a == b || !keep[b] {
                continue;
            }
            if cands[b].1.divides(&cands[a].1) && (cands[b].1 != cands[a].1 || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    // product criterion: coprime leading monomials never need a pair
    let new_pairs: Vec<Pair> = cands
        .iter()
        .zip(&keep)
        .filter(|(c, &k)| k && !c.2)
        .map(|(c, _)| Pair { i: c.0, j: hi, lcm: c.1, sugar: pair_sugar(c.0, &c.1) })
        .collect();

    // old pairs made redundant by h
    pairs.retain(|p| {
        !(hlm.divides(&p.lcm)
            && polys[p.i].leading().lcm(&hlm) != p.lcm
            && polys[p.j].leading().lcm(&hlm) != p.lcm)
    });
    pairs.extend(new_pairs);

    active.retain(|&g| !hlm.divides(polys[g].leading()));
    active.push(hi);
}

/// Normal form of `f` modulo a reduced basis, with exact rational coefficients.
pub fn normal_form(f: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    let order = &gb.order;
    let basis: Vec<(Monomial, Vec<(Monomial, Rat)>)> = gb
        .polys
        .iter()
        .map(|g| {
            let mut t: Vec<(Monomial, Rat)> = g.terms().map(|(m, c)| (*m, c.clone())).collect();
            t.sort_by(|a, b| order.cmp(&a.0, &b.0));
            let (lm, _) = t.pop().expect("nonzero basis element");
            (lm, t)
        })
        .collect();
    let mut p: Vec<(Monomial, Rat)> = f.terms().map(|(m, c)| (*m, c.clone())).collect();
    p.sort_by(|a, b| order.cmp(&a.0, &b.0));
    let mut r = f.zero_like();
    while let Some((m, c)) = p.pop() {
        match basis.iter().find(|(lm, _)| lm.divides(&m)) {
            Some((lm, tail)) => {
                let q = lm.quotient(&m);
                p = lin_comb_rat(&p, tail, &c, &q, order);
            }
            None => r.add_term(m, c),
        }
    }
    r
}

/// `f − b·(m·g)` over ℚ, both sorted increasing.
fn lin_comb_rat(
    f: &[(Monomial, Rat)],
    g: &[(Monomial, Rat)],
    b: &Rat,
    m: &Monomial,
    order: &MonomialOrder,
) -> Vec<(Monomial, Rat)> {
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
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((gm.unwrap(), -(&g[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &f[i].1 - &g[j].1 * b;
                if !c.is_zero() {
                    out.push((f[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// S-polynomial of two polynomials with respect to `order`.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: &MonomialOrder) -> MultiPoly {
    let lf = leading_monomial(f, order);
    let lg = leading_monomial(g, order);
    let l = lf.lcm(&lg);
    let cf = f.coeff(&lf);
    let cg = g.coeff(&lg);
    let a = f.mul_monomial(&lf.quotient(&l)).scale(&cf.recip());
    let b = g.mul_monomial(&lg.quotient(&l)).scale(&cg.recip());
    &a - &b
}
