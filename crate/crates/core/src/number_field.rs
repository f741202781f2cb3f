//! Number fields ℚ[T]/(h): element arithmetic, subfields, isomorphism tests,
//! splitting of primes and numerical Dedekind zeta values.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::algebraic::{make_integral, min_poly_mod, mul_mod};
use crate::arith::factor::{factor_over_q, is_irreducible_q};
use crate::arith::fp::factor_mod_p;
use crate::arith::linalg::{solve_columns, IncrementalEchelon};
use crate::arith::real::Real;
use crate::arith::{primes_up_to, rat, Rat, UniPoly};
use crate::error::{Error, Result};
use crate::groebner::AlgebraicComponent;
use crate::presentation::{Letter, Word};
use crate::trace::trace_polynomial;
use crate::zeta::LocalFactor;

/// Longest word used when generating the invariant trace field.
pub const MAX_WORD_LENGTH: usize = 6;

/// Products of more than this many terms are not summed by the Dirichlet method.
pub const DIRICHLET_CAP: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    /// Monic, integral, irreducible.
    pub h: UniPoly,
    pub degree: usize,
    pub disc_h: BigInt,
    /// Real places and complex places.
    pub signature: (usize, usize),
}

impl NumberField {
    pub fn new(h: UniPoly) -> Result<Self> {
        let degree = h.degree().filter(|&d| d > 0).ok_or_else(|| Error::Domain("field polynomial must be nonconstant".into()))?;
        if !h.lc().is_one() || !h.is_integral() {
            return Err(Error::Domain(format!("field polynomial {h} must be monic with integer coefficients")));
        }
        if !is_irreducible_q(&h) {
            return Err(Error::Domain(format!("{h} is reducible over ℚ")));
        }
        let disc_h = h.discriminant()?.to_integer();
        let signature = h.signature()?;
        Ok(NumberField { h, degree, disc_h, signature })
    }

    pub fn from_ints(c: &[i64]) -> Result<Self> {
        Self::new(UniPoly::from_ints(c))
    }

    pub fn rationals() -> Self {
        Self::from_ints(&[-1, 1]).expect("T − 1 is irreducible")
    }

    pub fn complex_places(&self) -> usize {
        self.signature.1
    }

    pub fn elem(&self, rep: UniPoly) -> FieldElem<'_> {
        FieldElem { owner: self, rep: rep.rem(&self.h) }
    }

    pub fn generator(&self) -> FieldElem<'_> {
        self.elem(UniPoly::x())
    }

    pub fn constant(&self, c: Rat) -> FieldElem<'_> {
        self.elem(UniPoly::constant(c))
    }
}

/// An element of a number field, represented modulo the field polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem<'a> {
    pub owner: &'a NumberField,
    pub rep: UniPoly,
}

impl<'a> FieldElem<'a> {
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn check(&self, o: &Self) {
        assert!(std::ptr::eq(self.owner, o.owner) || self.owner == o.owner, "elements of different fields");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        self.owner.elem(&self.rep + &o.rep)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        self.owner.elem(&self.rep - &o.rep)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        self.owner.elem(mul_mod(&self.rep, &o.rep, &self.owner.h))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // s·rep + t·h = g, with g a nonzero constant since h is irreducible
        let (g, s, _) = self.rep.xgcd(&self.owner.h);
        debug_assert!(g.is_constant());
        Some(self.owner.elem(s.scale(&g.lc().recip())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.owner.constant(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn min_poly(&self) -> UniPoly {
        element_min_poly(self)
    }
}

/// Monic minimal polynomial over ℚ, by linear dependence of `1, e, e², …`.
pub fn element_min_poly(e: &FieldElem) -> UniPoly {
    min_poly_mod(&e.rep, &e.owner.h)
}

/// A subfield of `K`: its own defining data plus the element of `K` that
/// the subfield's generator maps to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfield {
    pub field: NumberField,
    /// Image in `K` of the generator `T` of `field`.
    pub embedding: UniPoly,
}

impl Subfield {
    /// Writes `e ∈ K` as a polynomial in the subfield generator, if `e` lies
    /// in the subfield.
    pub fn express(&self, k: &NumberField, e: &UniPoly) -> Option<UniPoly> {
        express_in_powers(k, &self.embedding, self.field.degree, e)
    }
}

/// Coefficients `a_i` with `e = Σ_{i<d} a_i·θ^i` in `K`, if they exist.
pub fn express_in_powers(k: &NumberField, theta: &UniPoly, d: usize, e: &UniPoly) -> Option<UniPoly> {
    let n = k.degree;
    let mut cols = Vec::with_capacity(d);
    let mut pw = UniPoly::one();
    for _ in 0..d {
        cols.push((0..n).map(|i| pw.coeff(i)).collect::<Vec<Rat>>());
        pw = mul_mod(&pw, theta, &k.h);
    }
    let e = e.rem(&k.h);
    let rhs: Vec<Rat> = (0..n).map(|i| e.coeff(i)).collect();
    solve_columns(&cols, &rhs).map(UniPoly::new)
}

/// Incremental primitive-element construction for ℚ(g₁, g₂, …) ⊆ K.
struct SubfieldBuilder<'a> {
    k: &'a NumberField,
    theta: UniPoly,
    degree: usize,
    target: usize,
    /// Generators seen so far; alternative primitive elements.
    seen: Vec<UniPoly>,
}

impl<'a> SubfieldBuilder<'a> {
    fn new(k: &'a NumberField, target: usize) -> Self {
        SubfieldBuilder { k, theta: UniPoly::zero(), degree: 1, target, seen: Vec::new() }
    }

    /// `[ℚ(θ, g) : ℚ]`, from the rank of `θ^i g^j`; stops at the first power
    /// of `g` that adds nothing.
    fn joint_degree(&self, g: &UniPoly) -> usize {
        let n = self.k.degree;
        let h = &self.k.h;
        let mut ech = IncrementalEchelon::new(n);
        let mut gj = UniPoly::one();
        loop {
            let mut grew = false;
            let mut term = gj.clone();
            for _ in 0..self.degree {
                let v: Vec<Rat> = (0..n).map(|i| term.coeff(i)).collect();
                if ech.insert(&v).is_none() {
                    grew = true;
                }
                term = mul_mod(&term, &self.theta, h);
            }
            if !grew || ech.rank() == n {
                return ech.rank();
            }
            gj = mul_mod(&gj, g, h);
        }
    }

    fn add(&mut self, g: &UniPoly) -> Result<()> {
        let g = g.rem(&self.k.h);
        if !self.seen.contains(&g) {
            self.seen.push(g.clone());
        }
        let d = self.joint_degree(&g);
        if d == self.degree {
            return Ok(());
        }
        if d > self.target {
            return Err(Error::Inconsistent(format!(
                "generated subfield has degree {d}, more than the expected {}",
                self.target
            )));
        }
        // θ + c·g is primitive for all but finitely many c
        for c in (1..).flat_map(|c: i64| [c, -c]) {
            let cand = &self.theta + &g.scale(&Rat::from_integer(c.into()));
            if min_poly_mod(&cand, &self.k.h).degree() == Some(d) {
                self.theta = cand;
                self.degree = d;
                return Ok(());
            }
        }
        unreachable!()
    }

    /// Uses the primitive element with the smallest defining polynomial,
    /// measured by its largest coefficient, among the seen generators and
    /// their small affine transforms `(g + a)/b`. The whole field keeps `T`.
    fn finish(&self) -> Result<Subfield> {
        if self.degree == self.k.degree {
            return Ok(Subfield { field: self.k.clone(), embedding: UniPoly::x() });
        }
        let height = |h: &UniPoly| h.coeffs().iter().map(|c| c.numer().magnitude().clone()).max().unwrap_or_default();
        let mut best: Option<(UniPoly, UniPoly)> = None;
        for g in self.seen.iter().chain(std::iter::once(&self.theta)) {
            if min_poly_mod(g, &self.k.h).degree() != Some(self.degree) {
                continue;
            }
            for b in 1..=3i64 {
                for a in -3..=3i64 {
                    let e = (g + &UniPoly::constant(Rat::from_integer(a.into()))).scale(&rat(1, b));
                    let (hi, d) = make_integral(&min_poly_mod(&e, &self.k.h));
                    if best.as_ref().map_or(true, |(h, _)| height(&hi) < height(h)) {
                        best = Some((hi, e.scale(&Rat::from(d))));
                    }
                }
            }
        }
        let (hi, embedding) = best.expect("θ is primitive");
        Ok(Subfield { field: NumberField::new(hi)?, embedding })
    }
}

/// Smallest subfield of `K` containing `gens`.
pub fn subfield_generated(k: &NumberField, gens: &[UniPoly], target_degree: usize) -> Result<Subfield> {
    if target_degree == 0 || k.degree % target_degree != 0 {
        return Err(Error::Domain(format!("target degree {target_degree} does not divide {}", k.degree)));
    }
    let mut b = SubfieldBuilder::new(k, target_degree);
    for g in gens {
        b.add(g)?;
    }
    b.finish()
}

/// Cyclically reduced words of length `len` in a, b, one per class under
/// rotation and inversion.
fn word_classes(len: usize) -> Vec<Word> {
    let letters = [
        Letter { gen: 0, inv: false },
        Letter { gen: 0, inv: true },
        Letter { gen: 1, inv: false },
        Letter { gen: 1, inv: true },
    ];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<Letter>> = vec![Vec::new()];
    while let Some(w) = stack.pop() {
        if w.len() == len {
            let word = Word { rank: 2, letters: w };
            if word.cyclic_reduce().len() != len {
                continue;
            }
            let key = class_key(&word);
            if seen.insert(key) {
                out.push(word);
            }
            continue;
        }
        for l in letters {
            if w.last().is_some_and(|&last| last == l.inverse()) {
                continue;
            }
            let mut next = w.clone();
            next.push(l);
            stack.push(next);
        }
    }
    out.sort_by_key(|w| w.to_text(&['a', 'b']));
    out
}

fn class_key(w: &Word) -> String {
    let gens = ['a', 'b'];
    let mut best: Option<String> = None;
    for v in [w.clone(), w.inverse()] {
        for k in 0..v.len() {
            let mut letters = v.letters[k..].to_vec();
            letters.extend_from_slice(&v.letters[..k]);
            let s = Word { rank: 2, letters }.to_text(&gens);
            if best.as_ref().map_or(true, |b| s < *b) {
                best = Some(s);
            }
        }
    }
    best.unwrap_or_default()
}

/// Subfield of `K` generated by tr(w²) at the component's character, over
/// words of growing length until the degree reaches `deg K / h1order`.
pub fn invariant_trace_field(k: &NumberField, comp: &AlgebraicComponent, h1order: u64) -> Result<Subfield> {
    if comp.field_poly != k.h {
        return Err(Error::FieldMismatch("component is not presented over the given field".into()));
    }
    let h1 = usize::try_from(h1order).map_err(|_| Error::Domain("H¹ order out of range".into()))?;
    if h1 == 0 || k.degree % h1 != 0 {
        return Err(Error::Inconsistent(format!("#H¹ = {h1order} does not divide [K:ℚ] = {}", k.degree)));
    }
    let target = k.degree / h1;
    let mut b = SubfieldBuilder::new(k, target);
    for len in 1..=MAX_WORD_LENGTH {
        for w in word_classes(len) {
            let square = w.concat(&w)?;
            let t = trace_polynomial(&square)?;
            b.add(&comp.eval(&t))?;
        }
        if b.degree == target {
            log::debug!("invariant trace field saturated at word length {len}");
            return b.finish();
        }
    }
    Err(Error::SaturationFailure(format!(
        "traces of squares of words up to length {MAX_WORD_LENGTH} generate degree {}, expected {target}",
        b.degree
    )))
}

/// How `p` splits in ℤ[T]/(h).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DedekindSplitting {
    pub p: u64,
    /// `(residue degree f, multiplicity e)`, sorted.
    pub parts: Vec<(usize, usize)>,
    /// `p ∤ disc(h)`.
    pub good: bool,
}

pub fn dedekind_splitting(k: &NumberField, p: u64) -> Result<DedekindSplitting> {
    let factors = factor_mod_p(&k.h, p)?;
    let mut parts: Vec<(usize, usize)> = factors.iter().map(|(f, e)| (f.deg(), *e)).collect();
    parts.sort_unstable();
    let good = !(&k.disc_h % BigInt::from(p)).is_zero();
    Ok(DedekindSplitting { p, parts, good })
}

/// One local factor entry per prime above `p`, ignoring ramification.
pub fn dedekind_local_factor(split: &DedekindSplitting) -> LocalFactor {
    LocalFactor::new(split.parts.iter().map(|&(f, _)| f).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZetaMethod {
    Euler,
    Dirichlet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaValue {
    pub value: Real,
    /// Heuristic size of the truncation error.
    pub truncation: Real,
}

/// ζ_K(s) truncated at primes ≤ `prime_bound`, either as an Euler product or
/// as the Dirichlet series of the same local data over n ≤ min(bound², cap).
pub fn dedekind_zeta_value(k: &NumberField, s: u32, prime_bound: u64, method: ZetaMethod) -> Result<ZetaValue> {
    if s < 2 {
        return Err(Error::Domain("ζ_K(s) is evaluated only for s ≥ 2".into()));
    }
    if prime_bound < 2 {
        return Err(Error::Domain("prime bound must be at least 2".into()));
    }
    let primes = primes_up_to(prime_bound);
    let degrees: Vec<Vec<usize>> = primes
        .iter()
        .map(|&p| dedekind_splitting(k, p).map(|sp| sp.parts.iter().map(|&(f, _)| f).collect()))
        .collect::<Result<_>>()?;
    let n = k.degree as f64;
    match method {
        ZetaMethod::Euler => {
            let mut acc = Real::one();
            for (&p, fs) in primes.iter().zip(&degrees) {
                for &f in fs {
                    let q = Real::from_bigint(&num_traits::pow(BigInt::from(p), f * s as usize));
                    // (1 − q⁻¹)⁻¹ = q / (q − 1)
                    acc = &(&acc * &q) / &(&q - &Real::one());
                }
            }
            // tail over p > B: log ≤ n·Σ_{p>B} p^{−s} ≲ n / ((s−1)·B^{s−1}·ln B)
            let b = prime_bound as f64;
            let tail = n / ((s as f64 - 1.0) * b.powf(s as f64 - 1.0) * b.ln());
            Ok(ZetaValue { value: acc, truncation: Real::from_f64(tail) })
        }
        ZetaMethod::Dirichlet => {
            let limit = prime_bound.saturating_mul(prime_bound).min(DIRICHLET_CAP);
            let sum = dirichlet_sum(&primes, &degrees, s, limit);
            let l = limit as f64;
            let tail = (l.ln() + 1.0).powf(n - 1.0) / ((s as f64 - 1.0) * l.powf(s as f64 - 1.0));
            Ok(ZetaValue { value: sum, truncation: Real::from_f64(tail) })
        }
    }
}

/// Number of ideals of norm p^k: coefficients of ∏ (1 − T^f)⁻¹.
fn prime_power_counts(fs: &[usize], kmax: usize) -> Vec<u64> {
    let mut c = vec![0u64; kmax + 1];
    c[0] = 1;
    for &f in fs {
        for k in f..=kmax {
            c[k] += c[k - f];
        }
    }
    c
}

/// Σ a_n n^{−s} over n ≤ limit built from the given primes, with each term
/// a_n·2^120/n^s accumulated in integers.
fn dirichlet_sum(primes: &[u64], degrees: &[Vec<usize>], s: u32, limit: u64) -> Real {
    const SHIFT: u32 = 120;
    let tables: Vec<Vec<u64>> = primes
        .iter()
        .zip(degrees)
        .map(|(&p, fs)| {
            let kmax = (limit as f64).log(p as f64).floor() as usize + 1;
            prime_power_counts(fs, kmax)
        })
        .collect();
    let term = |n: u64, a: u64| -> u128 {
        let mut w = 1u128 << SHIFT;
        for _ in 0..s {
            w /= n as u128;
        }
        w * a as u128
    };
    // iterative DFS over (next prime index, n, a_n)
    let mut total: u128 = 0;
    let mut stack = vec![(0usize, 1u64, 1u64)];
    while let Some((start, n, a)) = stack.pop() {
        total += term(n, a);
        for i in start..primes.len() {
            let p = primes[i];
            if n > limit / p {
                break;
            }
            let mut m = n * p;
            let mut k = 1;
            loop {
                let c = tables[i][k];
                if c != 0 {
                    stack.push((i + 1, m, a * c));
                }
                if m > limit / p {
                    break;
                }
                m *= p;
                k += 1;
            }
        }
    }
    let raw = BigInt::from(total) << (crate::arith::real::FRAC_BITS - SHIFT as usize);
    Real::from_raw(raw)
}

/// Factor-degree pattern of `h` modulo each good prime up to `bound`.
pub fn splitting_fingerprint(k: &NumberField, bound: u64) -> Vec<(u64, Vec<usize>)> {
    primes_up_to(bound)
        .into_iter()
        .filter_map(|p| {
            let sp = dedekind_splitting(k, p).ok()?;
            sp.good.then(|| (p, sp.parts.iter().map(|&(f, _)| f).collect()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    /// `T_L ↦ image` is an isomorphism L → K.
    Certified { image: UniPoly },
    /// No exact certificate, but splitting patterns agree at all good p ≤ 500.
    FingerprintOnly,
    NotIsomorphic,
}

impl Isomorphism {
    pub fn holds(&self) -> bool {
        !matches!(self, Isomorphism::NotIsomorphic)
    }
}

/// Decides whether `L ≅ K` by looking for a root of L's polynomial in K.
pub fn field_isomorphism(k: &NumberField, l: &NumberField) -> Isomorphism {
    if k.degree != l.degree || k.signature != l.signature {
        return Isomorphism::NotIsomorphic;
    }
    // discriminants of defining polynomials differ by a rational square
    let ratio = Rat::new(k.disc_h.clone(), l.disc_h.clone());
    if ratio.is_negative() || !is_square(ratio.numer()) || !is_square(ratio.denom()) {
        return Isomorphism::NotIsomorphic;
    }
    match roots_in_field(&l.h, k) {
        Some(roots) => match roots.into_iter().next() {
            Some(image) => Isomorphism::Certified { image },
            None => Isomorphism::NotIsomorphic,
        },
        None => {
            log::warn!("no exact isomorphism certificate for {} and {}; comparing splitting patterns", k.h, l.h);
            let (fk, fl) = fingerprint_at_common_good_primes(k, l);
            if fk == fl {
                Isomorphism::FingerprintOnly
            } else {
                Isomorphism::NotIsomorphic
            }
        }
    }
}

fn fingerprint_at_common_good_primes(k: &NumberField, l: &NumberField) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for p in primes_up_to(500) {
        let (Ok(sk), Ok(sl)) = (dedekind_splitting(k, p), dedekind_splitting(l, p)) else { continue };
        if sk.good && sl.good {
            a.push(sk.parts.iter().map(|&(f, _)| f).collect());
            b.push(sl.parts.iter().map(|&(f, _)| f).collect());
        }
    }
    (a, b)
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Polynomials with coefficients in K, lowest degree first.
type KPoly = Vec<UniPoly>;

fn kpoly_trim(mut a: KPoly) -> KPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn kpoly_rem(a: &KPoly, b: &KPoly, k: &NumberField) -> KPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let inv_lc = k.elem(b[db].clone()).inv().expect("nonzero leading coefficient").rep;
    while r.len() > db {
        let top = r.len() - 1;
        let q = mul_mod(&r[top], &inv_lc, &k.h);
        for (i, bc) in b.iter().enumerate() {
            let t = mul_mod(&q, bc, &k.h);
            r[top - db + i] = (&r[top - db + i] - &t).rem(&k.h);
        }
        r = kpoly_trim(r);
    }
    r
}

fn kpoly_gcd(a: &KPoly, b: &KPoly, k: &NumberField) -> KPoly {
    let (mut a, mut b) = (kpoly_trim(a.clone()), kpoly_trim(b.clone()));
    while !b.is_empty() {
        let r = kpoly_rem(&a, &b, k);
        a = b;
        b = r;
    }
    // monic
    if let Some(lc) = a.last() {
        let inv = k.elem(lc.clone()).inv().expect("nonzero").rep;
        a = a.iter().map(|c| mul_mod(c, &inv, &k.h)).collect();
    }
    a
}

/// `f(x + c)` for rational `f` and `c ∈ K`, as a polynomial over K.
fn shift_into_k(f: &UniPoly, c: &UniPoly, k: &NumberField) -> KPoly {
    let mut acc: KPoly = Vec::new();
    for coef in f.coeffs().iter().rev() {
        // acc·(x + c) + coef
        let mut next = vec![UniPoly::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i + 1] = &next[i + 1] + a;
            next[i] = (&next[i] + &mul_mod(a, c, &k.h)).rem(&k.h);
        }
        next[0] = &next[0] + &UniPoly::constant(coef.clone());
        acc = kpoly_trim(next);
    }
    acc
}

/// Newton interpolation through `(i, values[i])`, i = 0, 1, ….
fn interpolate(values: &[Rat]) -> UniPoly {
    let n = values.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / Rat::from_integer(BigInt::from(j));
        }
    }
    let mut p = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let factor = UniPoly::from_ints(&[-(i as i64), 1]);
        p = &(&p * &factor) + &UniPoly::constant(dd[i].clone());
    }
    p
}

/// All roots in K of the squarefree rational polynomial `g`, by Trager's
/// norm method: for a shift s with N(x) = Norm_{K/ℚ} g(x − sα) squarefree,
/// the linear factors of g over K are gcd(g, F(x + sα)) for the factors F of
/// N of degree [K:ℚ]. `None` if no suitable shift was found.
pub fn roots_in_field(g: &UniPoly, k: &NumberField) -> Option<Vec<UniPoly>> {
    let g = g.monic();
    let dg = g.degree()?;
    let n = k.degree;
    let alpha = UniPoly::x();
    let g_k: KPoly = g.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect();
    for s in 1..=20i64 {
        // N(x_i) = Res_T(h(T), g(x_i − sT))
        let values: Vec<Rat> = (0..=(n * dg) as i64)
            .map(|xi| {
                let lin = UniPoly::from_ints(&[xi, -s]);
                k.h.resultant(&g.compose(&lin))
            })
            .collect();
        let norm = interpolate(&values);
        if !norm.is_squarefree() {
            continue;
        }
        let shift = alpha.scale(&Rat::from_integer(s.into()));
        let mut roots = Vec::new();
        for (f, _) in factor_over_q(&norm) {
            if f.degree() != Some(n) {
                continue;
            }
            let lin = kpoly_gcd(&g_k, &shift_into_k(&f, &shift, k), k);
            if lin.len() == 2 {
                let root = (-&lin[0]).rem(&k.h);
                roots.push(root);
            }
        }
        // verify exactly
        roots.retain(|r| eval_in_field(&g, r, k).is_zero());
        roots.sort_by_key(|r| r.to_strings());
        return Some(roots);
    }
    None
}

fn eval_in_field(f: &UniPoly, x: &UniPoly, k: &NumberField) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in f.coeffs().iter().rev() {
        acc = (&mul_mod(&acc, x, &k.h) + &UniPoly::constant(c.clone())).rem(&k.h);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn splitting_of_weeks_field() {
        let k = NumberField::from_ints(&[-1, -1, 0, 1]).unwrap();
        assert_eq!(k.disc_h, BigInt::from(-23));
        assert_eq!(k.signature, (1, 1));
        let s7 = dedekind_splitting(&k, 7).unwrap();
        assert_eq!(s7.parts, vec![(1, 1), (2, 1)]);
        assert!(s7.good);
        assert_eq!(dedekind_splitting(&k, 2).unwrap().parts, vec![(3, 1)]);
        let s23 = dedekind_splitting(&k, 23).unwrap();
        assert!(!s23.good);
        assert!(s23.parts.iter().any(|&(_, e)| e == 2));
    }

    #[test]
    fn minimal_polynomials() {
        let k = NumberField::from_ints(&[-1, -1, 0, 1]).unwrap();
        assert_eq!(k.generator().min_poly(), k.h);
        assert_eq!(k.constant(rat(5, 3)).min_poly(), UniPoly::new(vec![rat(-5, 3), rat(1, 1)]));
        let e = k.elem(UniPoly::from_ints(&[1, 0, -1]));
        assert_eq!(e.min_poly(), UniPoly::from_ints(&[1, 0, -1, 1]));
        let inv = e.inv().unwrap();
        assert_eq!(inv.mul(&e), k.constant(rat(1, 1)));
    }

    #[test]
    fn roots_and_isomorphisms() {
        // T³ − T² + 1 has the root 1 − T² in ℚ[T]/(T³ − T − 1)
        let k = NumberField::from_ints(&[-1, -1, 0, 1]).unwrap();
        let l = NumberField::from_ints(&[1, 0, -1, 1]).unwrap();
        match field_isomorphism(&k, &l) {
            Isomorphism::Certified { image } => assert!(eval_in_field(&l.h, &image, &k).is_zero()),
            other => panic!("expected a certificate, got {other:?}"),
        }
        let cyclic = NumberField::from_ints(&[1, -2, -1, 1]).unwrap();
        assert_eq!(field_isomorphism(&k, &cyclic), Isomorphism::NotIsomorphic);
        // T⁶ − T² − 1 and its reciprocal T⁶ + T⁴ − 1
        let a = NumberField::from_ints(&[-1, 0, -1, 0, 0, 0, 1]).unwrap();
        let b = NumberField::from_ints(&[-1, 0, 0, 0, 1, 0, 1]).unwrap();
        assert!(matches!(field_isomorphism(&a, &b), Isomorphism::Certified { .. }));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = UniPoly::from_ints(&[3, -1, 0, 2]);
        let values: Vec<Rat> = (0..6).map(|i| f.eval(&rat(i, 1))).collect();
        assert_eq!(interpolate(&values), f);
    }

    #[test]
    fn subfield_of_quartic() {
        // ℚ(√−3) inside ℚ[T]/(T⁴ − 2T² + 4): T² − 1 squares to −3
        let k = NumberField::from_ints(&[4, 0, -2, 0, 1]).unwrap();
        let sub = subfield_generated(&k, &[UniPoly::from_ints(&[0, 0, 1])], 2).unwrap();
        assert_eq!(sub.field.degree, 2);
        let eisenstein = NumberField::from_ints(&[1, -1, 1]).unwrap();
        assert!(field_isomorphism(&sub.field, &eisenstein).holds());
        let whole = subfield_generated(&k, &[UniPoly::x()], 4).unwrap();
        assert_eq!(whole.field.h, k.h);
        assert!(subfield_generated(&k, &[UniPoly::x()], 2).is_err());
    }

    #[test]
    fn riemann_zeta_two() {
        let q = NumberField::rationals();
        let v = dedekind_zeta_value(&q, 2, 10_000, ZetaMethod::Euler).unwrap();
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((v.value.to_f64() - pi2_6).abs() < 1e-4);
        assert!(dedekind_zeta_value(&q, 2, 1, ZetaMethod::Euler).is_err());
        assert!(dedekind_zeta_value(&q, 1, 100, ZetaMethod::Euler).is_err());
    }

    #[test]
    fn prime_power_counts_of_split_types() {
        assert_eq!(prime_power_counts(&[1, 2], 4), vec![1, 1, 2, 2, 3]);
        assert_eq!(prime_power_counts(&[3], 6), vec![1, 0, 0, 1, 0, 0, 1]);
    }
}
