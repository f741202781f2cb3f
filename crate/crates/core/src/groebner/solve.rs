//! Zero-dimensional solving through the finite-dimensional quotient algebra.
//!
//! The quotient ℚ[vars]/I is described by its standard monomials and one
//! multiplication matrix per variable. The ideal is made radical by adding
//! the squarefree part of each variable's minimal polynomial; then a
//! separating linear form ℓ has minimal polynomial of degree dim(ℚ[vars]/I),
//! every coordinate is a polynomial in ℓ, and the irreducible factors of
//! minpoly(ℓ) are the components.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::buchberger::{buchberger_with_cancel, normal_form, CancelToken, GroebnerBasis};
use crate::arith::algebraic::{change_generator, make_integral, min_poly_mod, mul_mod, substitute};
use crate::arith::factor::factor_over_q;
use crate::arith::linalg::{krylov_min_poly, mat_vec};
use crate::arith::modular::{large_primes, solve_mod_p, Reconstructor};
use crate::arith::fp::{add_mod, inv_mod, mul_mod as fp_mul, sub_mod};
use crate::arith::{rat_mod_p, Monomial, MultiPoly, Rat, UniPoly};
use crate::error::{Error, Result};

/// Standard-monomial count above which solving is refused.
const MAX_QUOTIENT_DIM: usize = 4000;

/// One irreducible component: the points `(coords[0](t), …)` for `t` running
/// over the roots of `field_poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicComponent {
    pub vars: Vec<String>,
    /// Monic, integral, irreducible over ℚ.
    pub field_poly: UniPoly,
    /// Reduced modulo `field_poly`.
    pub coords: Vec<UniPoly>,
    /// The input ideal was already radical.
    pub multiplicity_free: bool,
}

impl AlgebraicComponent {
    pub fn degree(&self) -> usize {
        self.field_poly.degree().unwrap_or(0)
    }

    /// `f(coords)` in ℚ[T]/(field_poly).
    pub fn eval(&self, f: &MultiPoly) -> UniPoly {
        let h = &self.field_poly;
        f.eval_with(
            &self.coords,
            UniPoly::one(),
            |c| UniPoly::constant(c.clone()),
            |a, b| a + b,
            |a, b| mul_mod(a, b, h),
        )
        .rem(h)
    }

    pub fn satisfies(&self, gens: &[MultiPoly]) -> bool {
        gens.iter().all(|g| self.eval(g).is_zero())
    }

    pub fn coordinate_min_poly(&self, i: usize) -> UniPoly {
        min_poly_mod(&self.coords[i], &self.field_poly)
    }
}

pub struct SolveOptions {
    pub seed: u64,
    /// Variables to try, in order, as the primitive element of each component.
    pub prefer: Vec<usize>,
    pub cancel: CancelToken,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { seed: 0x5eed, prefer: Vec::new(), cancel: CancelToken::new() }
    }
}

pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    if gb.is_unit_ideal() {
        return true;
    }
    let lms = gb.leading_monomials();
    (0..gb.vars.len()).all(|v| lms.iter().any(|m| matches!(m.pure_power(), Some((w, _)) if w == v)))
}

/// Monomials outside the leading-term ideal, sorted increasing in the basis order.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<Vec<Monomial>> {
    if !is_zero_dimensional(gb) {
        return Err(Error::NotZeroDimensional);
    }
    if gb.is_unit_ideal() {
        return Ok(Vec::new());
    }
    let lms = gb.leading_monomials();
    let n = gb.vars.len();
    let mut seen = vec![Monomial::one()];
    let mut queue = VecDeque::from([Monomial::one()]);
    while let Some(m) = queue.pop_front() {
        for v in 0..n {
            let next = m.mul(&Monomial::var(v, 1));
            if lms.iter().any(|l| l.divides(&next)) || seen.contains(&next) {
                continue;
            }
            if seen.len() >= MAX_QUOTIENT_DIM {
                return Err(Error::ResourceBudget(format!(
                    "quotient algebra has more than {MAX_QUOTIENT_DIM} standard monomials"
                )));
            }
            seen.push(next);
            queue.push_back(next);
        }
    }
    seen.sort_by(|a, b| gb.order.cmp(a, b));
    Ok(seen)
}

/// Multiplication matrices of ℚ[vars]/I in the standard-monomial basis.
pub(super) struct Quotient {
    pub(super) dim: usize,
    /// `mult[v][row][col]`: coordinate `row` of `x_v · basis[col]`.
    pub(super) mult: Vec<Vec<Vec<Rat>>>,
}

impl Quotient {
    pub(super) fn new(gb: &GroebnerBasis, cancel: &CancelToken) -> Result<Self> {
        let basis = standard_monomials(gb)?;
        let dim = basis.len();
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let names = gb.var_names();
        let mut mult = Vec::with_capacity(names.len());
        for v in 0..names.len() {
            let mut m = vec![vec![Rat::zero(); dim]; dim];
            for (col, b) in basis.iter().enumerate() {
                cancel.check()?;
                let prod = b.mul(&Monomial::var(v, 1));
                if let Some(&row) = index.get(&prod) {
                    m[row][col] = Rat::one();
                    continue;
                }
                let nf = normal_form(&MultiPoly::from_terms(&names, [(prod, Rat::one())]), gb);
                for (mono, c) in nf.terms() {
                    m[index[mono]][col] = c.clone();
                }
            }
            mult.push(m);
        }
        Ok(Quotient { dim, mult })
    }

    pub(super) fn unit(&self) -> Vec<Rat> {
        let mut e = vec![Rat::zero(); self.dim];
        e[0] = Rat::one();
        e
    }

    fn apply(&self, form: &[i64], v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (var, &c) in form.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let w = mat_vec(&self.mult[var], v);
            let c = Rat::from_integer(c.into());
            for (o, x) in out.iter_mut().zip(w) {
                *o += &c * x;
            }
        }
        out
    }

    fn min_poly(&self, form: &[i64]) -> (UniPoly, Vec<Vec<Rat>>) {
        krylov_min_poly(self.unit(), |v| self.apply(form, v))
    }

    /// Multiplication matrices modulo `p`, unless a denominator vanishes there.
    fn reduce_mod(&self, p: u64) -> Option<Vec<Vec<Vec<u64>>>> {
        self.mult
            .iter()
            .map(|m| m.iter().map(|row| row.iter().map(|c| rat_mod_p(c, p)).collect()).collect())
            .collect()
    }
}

/// Screening prime for separating forms; a full-rank Krylov sequence mod p
/// certifies one over ℚ.
const SCREEN_PRIME: u64 = 4_611_686_018_427_387_847;

/// Primes tried before multi-modular reconstruction gives up.
const MAX_PRIMES: usize = 400;

type ModMats = Vec<Vec<Vec<u64>>>;

fn apply_mod(mult: &ModMats, form: &[i64], v: &[u64], p: u64) -> Vec<u64> {
    let dim = v.len();
    let mut out = vec![0u64; dim];
    for (var, &c) in form.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = c.rem_euclid(p as i64) as u64;
        for (o, row) in out.iter_mut().zip(&mult[var]) {
            let mut s = 0u64;
            for (a, b) in row.iter().zip(v) {
                if *a != 0 && *b != 0 {
                    s = add_mod(s, fp_mul(*a, *b, p), p);
                }
            }
            *o = add_mod(*o, fp_mul(s, c, p), p);
        }
    }
    out
}

/// Krylov vectors `1, ℓ, …, ℓ^r` modulo `p`, where `ℓ^r` is the first power
/// dependent on the earlier ones (so `r` is the degree of minpoly(ℓ) mod p).
fn krylov_mod_p(mult: &ModMats, form: &[i64], p: u64) -> Vec<Vec<u64>> {
    let dim = mult[0].len();
    let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut raw = Vec::new();
    let mut v = vec![0u64; dim];
    v[0] = 1;
    loop {
        let mut w = v.clone();
        for (piv, row) in &echelon {
            if w[*piv] != 0 {
                let f = w[*piv];
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = sub_mod(*wi, fp_mul(f, *ri, p), p);
                }
            }
        }
        let next = apply_mod(mult, form, &v, p);
        raw.push(v);
        match w.iter().position(|&c| c != 0) {
            None => return raw,
            Some(piv) => {
                let inv = inv_mod(w[piv], p);
                for wi in w.iter_mut() {
                    *wi = fp_mul(*wi, inv, p);
                }
                echelon.push((piv, w));
            }
        }
        v = next;
    }
}

fn krylov_rank_mod_p(mult: &ModMats, form: &[i64], p: u64) -> usize {
    krylov_mod_p(mult, form, p).len() - 1
}

/// Multiplication matrices modulo successive large primes, computed on demand.
struct ModularImages<'a> {
    q: &'a Quotient,
    images: Vec<(u64, ModMats)>,
    primes: Box<dyn Iterator<Item = u64>>,
}

impl<'a> ModularImages<'a> {
    fn new(q: &'a Quotient) -> Self {
        ModularImages { q, images: Vec::new(), primes: Box::new(large_primes()) }
    }

    fn get(&mut self, i: usize) -> Option<&(u64, ModMats)> {
        while self.images.len() <= i {
            let mut found = false;
            for p in self.primes.by_ref().take(MAX_PRIMES) {
                if let Some(m) = self.q.reduce_mod(p) {
                    self.images.push((p, m));
                    found = true;
                    break;
                }
            }
            if !found {
                return None;
            }
        }
        self.images.get(i)
    }
}

/// Minimal polynomial of the form `ℓ` and, if `targets` is nonempty, the
/// expressions of `targets` (variable indices) as polynomials in ℓ, by
/// Chinese remaindering of modular Krylov solves. Each stable reconstruction
/// is handed to `accept`, which must verify it exactly.
fn reconstruct_krylov<R>(
    images: &mut ModularImages,
    form: &[i64],
    targets: &[usize],
    cancel: &CancelToken,
    mut accept: impl FnMut(UniPoly, Vec<UniPoly>) -> Option<R>,
) -> Result<R> {
    let mut rec = Reconstructor::new();
    let mut rank = 0;
    let mut previous: Option<Vec<Rat>> = None;
    for i in 0..MAX_PRIMES {
        cancel.check()?;
        let Some((p, mult)) = images.get(i) else { break };
        let p = *p;
        let raw = krylov_mod_p(mult, form, p);
        let r = raw.len() - 1;
        if r < rank {
            continue;
        }
        if r > rank {
            rank = r;
            rec = Reconstructor::new();
            previous = None;
        }
        let mut rhs = vec![raw[r].clone()];
        for &t in targets {
            // x_t · 1 is column 0 of its multiplication matrix
            rhs.push(mult[t].iter().map(|row| row[0]).collect());
        }
        let Some(sol) = solve_mod_p(&raw[..r], &rhs, p) else { continue };
        rec.add(p, &sol.concat());
        let Some(values) = rec.reconstruct() else { continue };
        if previous.as_ref() == Some(&values) {
            let mut chunks = values.chunks(r.max(1));
            let rel = if r == 0 { Vec::new() } else { chunks.next().unwrap().to_vec() };
            let mut mp: Vec<Rat> = rel.iter().map(|c| -c).collect();
            mp.push(Rat::one());
            let coords: Vec<UniPoly> = chunks.map(|c| UniPoly::new(c.to_vec())).collect();
            if let Some(out) = accept(UniPoly::new(mp), coords) {
                return Ok(out);
            }
        }
        previous = Some(values);
    }
    Err(Error::Inconsistent("multi-modular reconstruction did not stabilise".into()))
}

fn univariate_as_multi(f: &UniPoly, v: usize, names: &[&str]) -> MultiPoly {
    MultiPoly::from_terms(
        names,
        f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (Monomial::var(v, k as u16), c.clone())),
    )
}

pub fn solve_zero_dim(gb: &GroebnerBasis) -> Result<Vec<AlgebraicComponent>> {
    solve_zero_dim_with(gb, &SolveOptions::default())
}

pub fn solve_zero_dim_with(gb: &GroebnerBasis, opts: &SolveOptions) -> Result<Vec<AlgebraicComponent>> {
    if gb.is_unit_ideal() {
        return Ok(Vec::new());
    }
    if !is_zero_dimensional(gb) {
        return Err(Error::NotZeroDimensional);
    }
    let names = gb.var_names();
    let n = names.len();
    let unit_form = |v: usize| -> Vec<i64> { (0..n).map(|w| i64::from(w == v)).collect() };

    let q0 = Quotient::new(gb, &opts.cancel)?;
    let mut extra = Vec::new();
    {
        let mut images = ModularImages::new(&q0);
        for v in 0..n {
            // m(x_v) ∈ I is checked exactly; its degree equals the largest
            // modular rank, so m is the minimal polynomial.
            let m = reconstruct_krylov(&mut images, &unit_form(v), &[], &opts.cancel, |m, _| {
                normal_form(&univariate_as_multi(&m, v, &names), gb).is_zero().then_some(m)
            })?;
            let sq = m.squarefree_part();
            if sq.degree() != m.degree() {
                extra.push(univariate_as_multi(&sq, v, &names));
            }
        }
    }
    let multiplicity_free = extra.is_empty();
    let (rgb, q) = if multiplicity_free {
        (gb.clone(), q0)
    } else {
        let mut gens = gb.polys.clone();
        gens.extend(extra);
        let rgb = buchberger_with_cancel(&gens, &gb.order, &opts.cancel)?;
        let q = Quotient::new(&rgb, &opts.cancel)?;
        (rgb, q)
    };
    let dim = q.dim;

    let mut prefer = opts.prefer.clone();
    if prefer.is_empty() {
        prefer.push(gb.order.last_var());
    }
    for v in 0..n {
        if !prefer.contains(&v) {
            prefer.push(v);
        }
    }

    // separating linear form: full Krylov rank modulo a prime suffices
    let screen = q.reduce_mod(SCREEN_PRIME);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut candidates: Vec<Vec<i64>> = prefer.iter().map(|&v| unit_form(v)).collect();
    for attempt in 0..200 {
        let r = 8 + 4 * (attempt / 10);
        let mut f: Vec<i64> = (0..n).map(|_| rng.gen_range(-r..=r)).collect();
        f[prefer[0]] = 1;
        candidates.push(f);
    }
    let mut form = None;
    for f in candidates {
        opts.cancel.check()?;
        let separates = match &screen {
            Some(m) => krylov_rank_mod_p(m, &f, SCREEN_PRIME) == dim,
            None => q.min_poly(&f).0.degree() == Some(dim),
        };
        if separates {
            form = Some(f);
            break;
        }
    }
    let form = form.ok_or_else(|| Error::Inconsistent("no separating linear form found".into()))?;
    log::debug!("separating form {form:?}, quotient dimension {dim}");

    // The points are certified by: squarefree minpoly(ℓ) of degree dim, every
    // component on V(rgb), and ℓ evaluating to the component's root. Since
    // rgb is radical with dim points, nothing is missed.
    let ell = MultiPoly::from_terms(
        &names,
        form.iter().enumerate().filter(|(_, &c)| c != 0).map(|(v, &c)| (Monomial::var(v, 1), Rat::from_integer(c.into()))),
    );
    let all_vars: Vec<usize> = (0..n).collect();
    let mut images = ModularImages::new(&q);
    let mut comps = reconstruct_krylov(&mut images, &form, &all_vars, &opts.cancel, |sep_poly, coords_in_l| {
        if sep_poly.degree() != Some(dim) || !sep_poly.is_squarefree() {
            return None;
        }
        let mut comps = Vec::new();
        for (h, _) in factor_over_q(&sep_poly) {
            let h = h.monic();
            let coords: Vec<UniPoly> = coords_in_l.iter().map(|a| a.rem(&h)).collect();
            let comp = AlgebraicComponent { vars: gb.vars.clone(), field_poly: h, coords, multiplicity_free };
            if comp.eval(&ell) != UniPoly::x().rem(&comp.field_poly) || !comp.satisfies(&rgb.polys) {
                return None;
            }
            comps.push(comp);
        }
        Some(comps)
    })?;

    for comp in comps.iter_mut() {
        let mut h = comp.field_poly.clone();
        let mut coords = std::mem::take(&mut comp.coords);
        for &v in &prefer {
            if let Some((g, tq)) = change_generator(&coords[v], &h) {
                coords = coords.iter().map(|a| substitute(a, &tq, &g)).collect();
                h = g;
                break;
            }
        }
        let (hi, d) = make_integral(&h);
        if !d.is_one() {
            // old generator t = t'/d
            let back = UniPoly::new(vec![Rat::zero(), Rat::new(1.into(), d)]);
            coords = coords.iter().map(|a| a.compose(&back).rem(&hi)).collect();
        }
        comp.field_poly = hi;
        comp.coords = coords;
        if !comp.satisfies(&rgb.polys) {
            return Err(Error::Inconsistent("component fails back-substitution".into()));
        }
    }
    comps.sort_by(|a, b| {
        a.degree().cmp(&b.degree()).then_with(|| a.field_poly.to_strings().cmp(&b.field_poly.to_strings()))
    });
    Ok(comps)
}

/// Keeps the components on which `kappa` does not vanish.
pub fn filter_irreducible(comps: &[AlgebraicComponent], kappa: &MultiPoly) -> Vec<AlgebraicComponent> {
    comps.iter().filter(|c| !c.eval(kappa).is_zero()).cloned().collect()
}
