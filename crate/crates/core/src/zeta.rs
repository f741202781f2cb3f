//! Point counts of zero-dimensional schemes over finite fields, local zeta
//! factors, the prime-by-prime comparison with the Dedekind zeta function,
//! and Borel's volume formula.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::fp::{count_roots_in_extension, factor_mod_p};
use crate::arith::ffield::{FiniteField, GfTable};
use crate::arith::real::Real;
use crate::arith::{primes_up_to, Monomial, MultiPoly, Rat, UniPoly};
use crate::error::{Error, Result};
use crate::groebner::AlgebraicComponent;
use crate::number_field::{
    dedekind_local_factor, dedekind_splitting, dedekind_zeta_value, field_isomorphism, NumberField, ZetaMethod,
};

/// Default bound on `p^(n·#vars)` for exhaustive enumeration.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 20_000_000;

/// Exhaustive budget, overridable through `CHARZETA_BUDGET`.
pub fn exhaustive_budget() -> u128 {
    std::env::var("CHARZETA_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_EXHAUSTIVE_BUDGET)
}

/// ∏ (1 − T^{d_i})⁻¹: one degree per closed point over p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalFactor {
    /// Sorted.
    pub degrees: Vec<usize>,
}

impl LocalFactor {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        LocalFactor { degrees }
    }

    /// `N_n = Σ_{d_i | n} d_i` for n = 1..=m.
    pub fn counts(&self, m: usize) -> Vec<u64> {
        (1..=m).map(|n| self.degrees.iter().filter(|&&d| n % d == 0).map(|&d| d as u64).sum()).collect()
    }

    /// Coefficients of ∏ (1 − T^{d_i})⁻¹ up to `T^order`.
    pub fn product_series(&self, order: usize) -> Vec<Rat> {
        let mut c = vec![Rat::zero(); order + 1];
        c[0] = Rat::one();
        for &d in &self.degrees {
            for k in d..=order {
                let prev = c[k - d].clone();
                c[k] += prev;
            }
        }
        c
    }
}

/// Coefficients of exp(Σ_{n≥1} N_n Tⁿ/n) up to `T^order`, exactly.
pub fn exp_count_series(counts: &[u64], order: usize) -> Vec<Rat> {
    // E' = L'·E with L' = Σ N_n T^{n−1}, so k·e_k = Σ_{n=1..k} N_n e_{k−n}
    let mut e = vec![Rat::zero(); order + 1];
    e[0] = Rat::one();
    for k in 1..=order {
        let mut s = Rat::zero();
        for n in 1..=k.min(counts.len()) {
            s += Rat::from_integer(counts[n - 1].into()) * &e[k - n];
        }
        e[k] = s / Rat::from_integer(BigInt::from(k));
    }
    e
}

fn mobius(mut n: usize) -> i64 {
    let mut m = 1;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            m = -m;
        }
        f += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Recovers the closed-point degrees from `N_1..N_m` by Möbius inversion:
/// a_d = (1/d) Σ_{k|d} μ(d/k) N_k.
pub fn local_factor_from_counts(counts: &[u64]) -> Result<LocalFactor> {
    let mut degrees = Vec::new();
    for d in 1..=counts.len() {
        let mut s: i64 = 0;
        for k in (1..=d).filter(|k| d % k == 0) {
            s += mobius(d / k) * counts[k - 1] as i64;
        }
        if s < 0 || s % d as i64 != 0 {
            return Err(Error::Inconsistent(format!("counts inconsistent: no closed-point count at degree {d}")));
        }
        degrees.extend(std::iter::repeat(d).take((s / d as i64) as usize));
    }
    let lf = LocalFactor::new(degrees);
    debug_assert_eq!(lf.counts(counts.len()), counts);
    Ok(lf)
}

/// Integer model over ℤ[1/N] of a zero-dimensional scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeModel {
    /// Integer coefficients.
    pub generators: Vec<MultiPoly>,
    pub variables: Vec<String>,
    /// Primes dividing this are excluded from counting.
    pub denominator_modulus: BigInt,
    /// Variable `v` with `generators[0] = h(v)` and every other generator of
    /// the form `c·x_j − g(v)`, if the model is in shape position.
    pub shape_variable: Option<usize>,
}

impl SchemeModel {
    /// Shape-position model of one component: h(v) = 0 and c_j·x_j = g_j(v),
    /// where `v` is a coordinate equal to the field generator, or a new
    /// variable `t` if no coordinate is.
    pub fn from_component(comp: &AlgebraicComponent) -> Result<Self> {
        let mut variables = comp.vars.clone();
        let gen_var = comp.coords.iter().position(|c| *c == UniPoly::x());
        let v = match gen_var {
            Some(v) => v,
            None => {
                variables.push("t".into());
                variables.len() - 1
            }
        };
        let names: Vec<&str> = variables.iter().map(|s| s.as_str()).collect();
        let as_poly_in_v = |f: &UniPoly| -> MultiPoly {
            MultiPoly::from_terms(
                &names,
                f.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (Monomial::var(v, k as u16), c.clone())),
            )
        };
        if !comp.field_poly.is_integral() || !comp.field_poly.lc().is_one() {
            return Err(Error::Domain("component field polynomial must be monic and integral".into()));
        }
        let mut generators = vec![as_poly_in_v(&comp.field_poly)];
        let mut modulus = BigInt::one();
        for (j, c) in comp.coords.iter().enumerate() {
            if j == v {
                continue;
            }
            let den = c.coeffs().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let scaled = c.scale(&Rat::from(den.clone()));
            let xj = MultiPoly::from_terms(&names, [(Monomial::var(j, 1), Rat::from(den.clone()))]);
            generators.push(&xj - &as_poly_in_v(&scaled));
            modulus *= den;
        }
        Ok(SchemeModel { generators, variables, denominator_modulus: modulus, shape_variable: Some(v) })
    }

    /// Model from arbitrary integer generators, counted only exhaustively.
    pub fn from_generators(generators: Vec<MultiPoly>) -> Result<Self> {
        let variables = generators.first().map(|g| g.vars().to_vec()).unwrap_or_default();
        if generators.iter().any(|g| g.terms().any(|(_, c)| !c.is_integer())) {
            return Err(Error::Domain("scheme generators must have integer coefficients".into()));
        }
        Ok(SchemeModel { generators, variables, denominator_modulus: BigInt::one(), shape_variable: None })
    }

    pub fn is_bad(&self, p: u64) -> bool {
        (&self.denominator_modulus % BigInt::from(p)).is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Auto,
    Exhaustive,
    Univariate,
}

/// Number of points over 𝔽_{p^n}.
pub fn count_points(model: &SchemeModel, p: u64, n: usize) -> Result<u64> {
    count_points_with(model, p, n, CountMethod::Auto, exhaustive_budget())
}

/// `budget` bounds `p^(n·#vars)` for exhaustive enumeration.
pub fn count_points_with(model: &SchemeModel, p: u64, n: usize, method: CountMethod, budget: u128) -> Result<u64> {
    if model.is_bad(p) {
        return Err(Error::BadReduction(p));
    }
    if model.generators.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ok(0);
    }
    let exhaustive_ok = (p as u128)
        .checked_pow((n * model.variables.len()) as u32)
        .is_some_and(|total| total <= budget);
    match method {
        CountMethod::Univariate => count_univariate(model, p, n),
        CountMethod::Exhaustive => count_exhaustive(model, p, n, budget),
        CountMethod::Auto => {
            if model.shape_variable.is_some() {
                count_univariate(model, p, n)
            } else if exhaustive_ok {
                count_exhaustive(model, p, n, budget)
            } else {
                Err(Error::ResourceBudget(format!(
                    "{p}^{} points exceed the exhaustive budget and the model is not in shape position",
                    n * model.variables.len()
                )))
            }
        }
    }
}

fn count_univariate(model: &SchemeModel, p: u64, n: usize) -> Result<u64> {
    let v = model
        .shape_variable
        .ok_or_else(|| Error::Unsupported("univariate counting needs a shape-position model".into()))?;
    let h = &model.generators[0];
    let coeffs: Vec<Rat> = (0..=h.degree_in(v)).map(|k| h.coeff(&Monomial::var(v, k))).collect();
    let h = UniPoly::new(coeffs);
    // every root of h determines the other coordinates uniquely
    let factors = factor_mod_p(&h, p)?;
    Ok(count_roots_in_extension(&factors, n))
}

fn count_exhaustive(model: &SchemeModel, p: u64, n: usize, budget: u128) -> Result<u64> {
    let nv = model.variables.len();
    let total = (p as u128).checked_pow((n * nv) as u32);
    if total.map_or(true, |t| t > budget) {
        return Err(Error::ResourceBudget(format!("{p}^{} points exceed the exhaustive budget", n * nv)));
    }
    if nv == 0 {
        return Ok(u64::from(model.generators.iter().all(|g| g.is_zero())));
    }
    let field = FiniteField::new(p, n)?;
    let table = GfTable::new(&field)?;
    let pb = BigInt::from(p);
    // assignment order: the shape variable first, so later variables are
    // pinned by their linear generators
    let mut order: Vec<usize> = (0..nv).collect();
    if let Some(v) = model.shape_variable {
        order.retain(|&w| w != v);
        order.insert(0, v);
    }
    let mut position = vec![0; nv];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    // each generator is checked as soon as its last variable is assigned
    let mut by_depth: Vec<Vec<Vec<(u32, Monomial)>>> = vec![Vec::new(); nv];
    for g in &model.generators {
        let terms: Vec<(u32, Monomial)> = g
            .terms()
            .filter_map(|(m, c)| {
                let r = c.numer().mod_floor(&pb).to_u64().unwrap();
                (r != 0).then(|| (table.constant(r), *m))
            })
            .collect();
        if terms.is_empty() {
            continue;
        }
        let depth = g.support().into_iter().map(|v| position[v]).max().unwrap_or(0);
        by_depth[depth].push(terms);
    }
    let elems: Vec<u32> = table.elements().collect();
    let eval = |terms: &[(u32, Monomial)], point: &[u32]| -> u32 {
        let mut acc = table.zero();
        for (c, m) in terms {
            let mut t = *c;
            for (v, &e) in m.0.iter().enumerate().take(nv) {
                if e > 0 {
                    t = table.mul(t, table.pow(point[v], e as u32));
                }
            }
            acc = table.add(acc, t);
        }
        acc
    };
    let mut point = vec![table.zero(); nv];
    let mut idx = vec![0usize; nv];
    let mut depth = 0usize;
    let mut count = 0u64;
    loop {
        if idx[depth] == elems.len() {
            if depth == 0 {
                break;
            }
            idx[depth] = 0;
            depth -= 1;
            idx[depth] += 1;
            continue;
        }
        point[order[depth]] = elems[idx[depth]];
        if !by_depth[depth].iter().all(|g| eval(g, &point) == table.zero()) {
            idx[depth] += 1;
        } else if depth + 1 == nv {
            count += 1;
            idx[depth] += 1;
        } else {
            depth += 1;
        }
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    SkippedBad,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeComparison {
    pub p: u64,
    pub verdict: Verdict,
    pub bad: bool,
    /// From point counts; absent when counting was impossible.
    pub scheme_factor: Option<LocalFactor>,
    pub dedekind_factor: LocalFactor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaComparisonReport {
    pub prime_bound: u64,
    pub primes: Vec<PrimeComparison>,
    pub bad_set: Vec<u64>,
    pub theorem_holds: bool,
}

impl ZetaComparisonReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &PrimeComparison> {
        self.primes.iter().filter(|c| c.verdict == Verdict::Mismatch)
    }
}

/// Compares, for every p ≤ `prime_bound`, the local factor of the
/// component's integer model (from point counts over 𝔽_{p^n}, n ≤ 2·deg)
/// with the Dedekind local factor of `K`.
pub fn compare_zeta(comp: &AlgebraicComponent, k: &NumberField, prime_bound: u64) -> Result<ZetaComparisonReport> {
    let own = NumberField::new(comp.field_poly.clone())?;
    if !field_isomorphism(k, &own).holds() {
        return Err(Error::FieldMismatch(format!("component field {} is not isomorphic to {}", own.h, k.h)));
    }
    let model = SchemeModel::from_component(comp)?;
    let deg = k.degree;
    let bad_modulus = &model.denominator_modulus * &k.disc_h * &own.disc_h;
    let primes = primes_up_to(prime_bound);
    let bad_set: Vec<u64> =
        primes.iter().copied().filter(|&p| (&bad_modulus % BigInt::from(p)).is_zero()).collect();

    let results: Vec<Result<PrimeComparison>> = primes
        .par_iter()
        .map(|&p| {
            let bad = bad_set.binary_search(&p).is_ok();
            let dedekind_factor = dedekind_local_factor(&dedekind_splitting(k, p)?);
            let counts: Result<Vec<u64>> = (1..=2 * deg).map(|n| count_points(&model, p, n)).collect();
            let scheme_factor = match counts {
                Ok(c) => {
                    let lf = local_factor_from_counts(&c)?;
                    // a reduced scheme of degree deg has no closed points of larger degree
                    if lf.degrees.iter().any(|&d| d > deg) {
                        return Err(Error::Inconsistent(format!("closed point of degree > {deg} over p = {p}")));
                    }
                    Some(lf)
                }
                Err(Error::BadReduction(_)) if bad => None,
                Err(e) => return Err(e),
            };
            let verdict = match &scheme_factor {
                None => Verdict::SkippedBad,
                Some(f) if *f == dedekind_factor => Verdict::Match,
                Some(_) => Verdict::Mismatch,
            };
            Ok(PrimeComparison { p, verdict, bad, scheme_factor, dedekind_factor })
        })
        .collect();
    let mut primes_out = results.into_iter().collect::<Result<Vec<_>>>()?;
    primes_out.sort_by_key(|c| c.p);
    let theorem_holds = primes_out.iter().all(|c| c.verdict != Verdict::Mismatch || c.bad);
    Ok(ZetaComparisonReport { prime_bound, primes: primes_out, bad_set, theorem_holds })
}

/// |Δ|^{3/2} ζ_k(2) ∏ (N𝔭 − 1) / (4π²)^{[k:ℚ]−1}.
pub fn borel_volume(disc_k: &BigInt, degree: usize, ram_norms: &[u64], zeta_k_2: &Real) -> Result<Real> {
    if degree < 2 || disc_k.is_zero() {
        return Err(Error::Domain("Borel volume needs a field of degree ≥ 2 with nonzero discriminant".into()));
    }
    if *zeta_k_2 <= Real::one() {
        return Err(Error::Domain("ζ_k(2) must exceed 1".into()));
    }
    if ram_norms.iter().any(|&n| n < 2) {
        return Err(Error::Domain("ramified prime norms must be at least 2".into()));
    }
    let d = Real::from_bigint(&disc_k.abs());
    let mut v = &(&d * &d.sqrt()) * zeta_k_2;
    for &n in ram_norms {
        v = &v * &Real::from_int(n as i64 - 1);
    }
    let four_pi2 = &Real::from_int(4) * &(&Real::pi() * &Real::pi());
    Ok(&v / &four_pi2.powi(degree as u32 - 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialValueCheck {
    pub zeta_2: Real,
    pub ratio: Real,
    pub nearest_rational: Rat,
    pub residual: Real,
    pub warning: Option<String>,
}

/// Largest denominator considered when naming the ratio.
pub const SPECIAL_VALUE_MAX_DENOMINATOR: i64 = 48;

/// ratio = ζ(k,2)·|Δ|^{3/2} / ((4π²)^{[k:ℚ]−1}·volume), and the nearest
/// rational with denominator ≤ 48.
pub fn special_value_check(k_inv: &NumberField, volume: &Real, prime_bound: u64) -> Result<SpecialValueCheck> {
    if !volume.is_positive() {
        return Err(Error::Domain("volume must be positive".into()));
    }
    let warning = (k_inv.complex_places() != 1).then(|| {
        format!(
            "invariant trace field {} has {} complex places; the special-value relation is stated for arithmetic manifolds, whose invariant trace field has exactly one",
            k_inv.h,
            k_inv.complex_places()
        )
    });
    if let Some(w) = &warning {
        log::warn!("{w}");
    }
    let zeta = dedekind_zeta_value(k_inv, 2, prime_bound, ZetaMethod::Euler)?.value;
    let d = Real::from_bigint(&k_inv.disc_h.abs());
    let four_pi2 = &Real::from_int(4) * &(&Real::pi() * &Real::pi());
    let denom = &four_pi2.powi(k_inv.degree.saturating_sub(1) as u32) * volume;
    let ratio = &(&(&d * &d.sqrt()) * &zeta) / &denom;
    let nearest_rational = nearest_rational(&ratio, SPECIAL_VALUE_MAX_DENOMINATOR);
    let residual = (&ratio - &Real::from_rat(&nearest_rational)).abs();
    Ok(SpecialValueCheck { zeta_2: zeta, ratio, nearest_rational, residual, warning })
}

/// Closest p/q to `x` with 1 ≤ q ≤ `max_den`; ties go to the smaller q.
pub fn nearest_rational(x: &Real, max_den: i64) -> Rat {
    let mut best: Option<(Real, Rat)> = None;
    for q in 1..=max_den {
        let scaled = x * &Real::from_int(q);
        let p = scaled.round();
        let cand = Rat::new(p, BigInt::from(q));
        let err = (x - &Real::from_rat(&cand)).abs();
        if best.as_ref().map_or(true, |(e, _)| err < *e) {
            best = Some((err, cand));
        }
    }
    best.expect("max_den ≥ 1").1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn counts_to_factor() {
        assert_eq!(local_factor_from_counts(&[1, 3, 1, 3, 1, 3]).unwrap().degrees, vec![1, 2]);
        assert_eq!(local_factor_from_counts(&[0, 0, 3, 0, 0, 3]).unwrap().degrees, vec![3]);
        assert!(local_factor_from_counts(&[0; 6]).unwrap().degrees.is_empty());
        assert!(local_factor_from_counts(&[0, 1]).is_err());
    }

    #[test]
    fn nearest_rational_small_denominators() {
        let x = Real::from_rat(&rat(1, 12)) + Real::from_f64(1e-9);
        assert_eq!(nearest_rational(&x, 48), rat(1, 12));
        assert_eq!(nearest_rational(&Real::from_rat(&rat(7, 3)), 48), rat(7, 3));
    }
}
