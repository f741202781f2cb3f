use charzeta_core::arith::real::Real;
use charzeta_core::arith::{primes_up_to, rat, rint, MultiPoly, UniPoly};
use charzeta_core::groebner::{filter_irreducible, AlgebraicComponent};
use charzeta_core::number_field::{
    dedekind_splitting, dedekind_zeta_value, field_isomorphism, splitting_fingerprint, subfield_generated,
    NumberField, ZetaMethod,
};
use charzeta_core::pipeline::character_variety;
use charzeta_core::presets;
use charzeta_core::trace::{reducibility_locus, TRACE_VARS};
use charzeta_core::zeta::{
    borel_volume, compare_zeta, count_points, count_points_with, exp_count_series, local_factor_from_counts,
    special_value_check, CountMethod, LocalFactor, SchemeModel, Verdict,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const WEEKS_VOLUME: &str = "0.9427073628";

fn weeks_field() -> NumberField {
    NumberField::from_ints(&[-1, -1, 0, 1]).unwrap()
}

fn weeks_shape() -> AlgebraicComponent {
    AlgebraicComponent {
        vars: TRACE_VARS.iter().map(|s| s.to_string()).collect(),
        field_poly: UniPoly::from_ints(&[-1, -1, 0, 1]),
        coords: vec![UniPoly::from_ints(&[1, 0, -1]), UniPoly::from_ints(&[1, 0, -1]), UniPoly::x()],
        multiplicity_free: true,
    }
}

fn canonical(name: &str) -> AlgebraicComponent {
    let pres = presets::presentation(name).unwrap();
    let comps: Vec<AlgebraicComponent> = character_variety(&pres, 1).unwrap().into_iter().map(|c| c.0).collect();
    let irr = filter_irreducible(&comps, &reducibility_locus());
    assert_eq!(irr.len(), 1, "{name}");
    irr.into_iter().next().unwrap()
}

#[test]
fn weeks_counts() {
    let model = SchemeModel::from_component(&weeks_shape()).unwrap();
    let c5: Vec<u64> = (1..=4).map(|n| count_points(&model, 5, n).unwrap()).collect();
    assert_eq!(c5, vec![1, 3, 1, 3]);
    let c2: Vec<u64> = (1..=3).map(|n| count_points(&model, 2, n).unwrap()).collect();
    assert_eq!(c2, vec![0, 0, 3]);
}

#[test]
fn empty_variety_has_no_points() {
    let one = MultiPoly::parse("1", &TRACE_VARS).unwrap();
    let model = SchemeModel::from_generators(vec![one]).unwrap();
    for p in [2, 3, 5, 7] {
        for n in 1..=3 {
            assert_eq!(count_points(&model, p, n).unwrap(), 0);
        }
    }
}

#[test]
fn exhaustive_budget_is_enforced() {
    let model = SchemeModel::from_generators(vec![MultiPoly::parse("x*y - z", &TRACE_VARS).unwrap()]).unwrap();
    assert_eq!(count_points_with(&model, 3, 1, CountMethod::Exhaustive, 1000).unwrap(), 9);
    assert!(count_points_with(&model, 31, 2, CountMethod::Auto, 1000).is_err());
}

#[test]
fn exhaustive_and_univariate_counts_agree() {
    for name in presets::PRESENTED {
        let model = SchemeModel::from_component(&canonical(name)).unwrap();
        for p in primes_up_to(31) {
            if model.is_bad(p) {
                continue;
            }
            for n in 1..=3 {
                let a = count_points_with(&model, p, n, CountMethod::Exhaustive, u128::MAX);
                let b = count_points_with(&model, p, n, CountMethod::Univariate, u128::MAX);
                assert_eq!(a.unwrap(), b.unwrap(), "{name} p={p} n={n}");
            }
        }
    }
}

#[test]
fn counts_are_galois_consistent() {
    // counts for n ≤ deg determine those for deg < n ≤ 2·deg
    for name in presets::PRESENTED {
        let comp = canonical(name);
        let deg = comp.degree();
        let model = SchemeModel::from_component(&comp).unwrap();
        for p in [7u64, 11, 13, 101] {
            if model.is_bad(p) {
                continue;
            }
            let counts: Vec<u64> = (1..=2 * deg).map(|n| count_points(&model, p, n).unwrap()).collect();
            let lf = local_factor_from_counts(&counts[..deg]).unwrap();
            assert_eq!(lf.counts(2 * deg), counts, "{name} p={p}");
        }
    }
}

#[test]
fn weeks_comparison_matches_everywhere() {
    let rep = compare_zeta(&weeks_shape(), &weeks_field(), 100).unwrap();
    assert!(rep.theorem_holds);
    assert!(rep.bad_set.iter().all(|&p| p == 23));
    assert!(rep.primes.iter().all(|c| c.verdict == Verdict::Match));
    assert_eq!(rep.primes.len(), 25);
    assert!(rep.primes.windows(2).all(|w| w[0].p < w[1].p));
}

#[test]
fn rational_point_matches_riemann_factors() {
    let point = AlgebraicComponent {
        vars: TRACE_VARS.iter().map(|s| s.to_string()).collect(),
        field_poly: UniPoly::from_ints(&[-2, 1]),
        coords: vec![UniPoly::from_ints(&[2]); 3],
        multiplicity_free: true,
    };
    let q = NumberField::from_ints(&[-2, 1]).unwrap();
    let rep = compare_zeta(&point, &q, 50).unwrap();
    assert!(rep.theorem_holds);
    for c in &rep.primes {
        assert_eq!(c.verdict, Verdict::Match);
        assert_eq!(c.dedekind_factor, LocalFactor::new(vec![1]));
    }
}

#[test]
fn mismatched_field_is_rejected_before_counting() {
    let k = NumberField::from_ints(&[-2, 0, 1]).unwrap();
    assert!(compare_zeta(&weeks_shape(), &k, 10).is_err());
}

#[test]
fn splitting_degrees_sum_to_field_degree() {
    for name in presets::PRESENTED.iter().chain(&["m004m61"]) {
        let k = NumberField::new(presets::trace_field(name).unwrap()).unwrap();
        for p in primes_up_to(200) {
            let s = dedekind_splitting(&k, p).unwrap();
            assert_eq!(s.parts.iter().map(|(f, e)| f * e).sum::<usize>(), k.degree);
            if s.good {
                assert!(s.parts.iter().all(|&(_, e)| e == 1));
            }
        }
    }
}

#[test]
fn totally_split_density_of_weeks_cubic() {
    let k = weeks_field();
    let primes = primes_up_to(10_000);
    let split = primes
        .iter()
        .filter(|&&p| dedekind_splitting(&k, p).unwrap().parts == vec![(1, 1), (1, 1), (1, 1)])
        .count();
    let density = split as f64 / primes.len() as f64;
    assert!((density - 1.0 / 6.0).abs() < 0.05, "density {density}");
}

#[test]
fn euler_and_dirichlet_agree() {
    let k = weeks_field();
    let e = dedekind_zeta_value(&k, 2, 100_000, ZetaMethod::Euler).unwrap();
    let d = dedekind_zeta_value(&k, 2, 100_000, ZetaMethod::Dirichlet).unwrap();
    assert!((&e.value - &d.value).abs() < Real::from_f64(1e-8));
}

#[test]
fn partial_products_increase() {
    let k = weeks_field();
    let mut last = Real::one();
    for b in [10, 100, 1000] {
        let v = dedekind_zeta_value(&k, 2, b, ZetaMethod::Euler).unwrap().value;
        assert!(v > last);
        last = v;
    }
    assert!(dedekind_zeta_value(&k, 2, 1, ZetaMethod::Euler).is_err());
}

#[test]
fn borel_formula_algebra() {
    let z = Real::from_f64(1.1);
    let d = rint(-23).to_integer();
    let base = borel_volume(&d, 3, &[], &z).unwrap();
    let four_pi2 = &Real::from_int(4) * &(&Real::pi() * &Real::pi());
    let expected = &(&Real::from_int(23) * &Real::from_int(23).sqrt()) * &z;
    let expected = &expected / &four_pi2.powi(2);
    assert!((&base - &expected).abs() < Real::from_f64(1e-30), "{base} vs {expected}");
    // N(𝔭) = 3 contributes 2, N(𝔭) = 5 contributes 4
    let r3 = borel_volume(&d, 3, &[3], &z).unwrap();
    let r5 = borel_volume(&d, 3, &[5], &z).unwrap();
    assert!((&r5 - &(&r3 * &Real::from_int(2))).abs() < Real::from_f64(1e-30));
    assert!(borel_volume(&d, 1, &[], &z).is_err());
    assert!(borel_volume(&d, 3, &[], &Real::from_f64(0.5)).is_err());
}

#[test]
fn weeks_special_value() {
    let vol = Real::parse_decimal(WEEKS_VOLUME).unwrap();
    let sv = special_value_check(&weeks_field(), &vol, 100_000).unwrap();
    assert!(sv.warning.is_none());
    assert!(sv.residual < Real::from_f64(1e-5), "ratio {}", sv.ratio);
    assert!(sv.nearest_rational.denom().to_i64().unwrap() <= 48);

    let doubled = &vol * &Real::from_int(2);
    let sv2 = special_value_check(&weeks_field(), &doubled, 100_000).unwrap();
    assert_eq!(&sv2.nearest_rational * rint(2), sv.nearest_rational);
}

#[test]
fn totally_real_field_warns() {
    let k = NumberField::from_ints(&[-2, 0, 1]).unwrap();
    let sv = special_value_check(&k, &Real::one(), 1000).unwrap();
    assert!(sv.warning.is_some());
}

#[test]
fn regenerated_subfield_has_same_fingerprint() {
    let k = NumberField::from_ints(&[-1, 0, -1, 0, 0, 0, 1]).unwrap();
    let sub = subfield_generated(&k, &[UniPoly::from_ints(&[0, 0, 1])], 3).unwrap();
    let again = subfield_generated(&k, &[sub.embedding.clone()], 3).unwrap();
    assert_eq!(again.field.degree, sub.field.degree);
    assert!(field_isomorphism(&sub.field, &again.field).holds());
    // compare at the first 20 primes good for both defining polynomials
    let fb = splitting_fingerprint(&again.field, 300);
    let common: Vec<_> = splitting_fingerprint(&sub.field, 300)
        .into_iter()
        .filter_map(|(p, a)| fb.iter().find(|(q, _)| *q == p).map(|(_, b)| (a, b.clone())))
        .take(20)
        .collect();
    assert_eq!(common.len(), 20);
    assert!(common.iter().all(|(a, b)| a == b));
    let cubic = NumberField::from_ints(&[1, 0, -1, 1]).unwrap();
    assert!(field_isomorphism(&sub.field, &cubic).holds());
}

#[test]
fn random_elements_satisfy_their_minimal_polynomials() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for name in presets::PRESENTED {
        let k = NumberField::new(presets::trace_field(name).unwrap()).unwrap();
        for _ in 0..10 {
            let c: Vec<_> = (0..k.degree).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))).collect();
            let e = k.elem(UniPoly::new(c));
            let m = e.min_poly();
            let d = m.degree().unwrap();
            assert_eq!(k.degree % d, 0);
            // m(e) = 0 in K
            let mut acc = k.constant(rint(0));
            for coeff in m.coeffs().iter().rev() {
                acc = acc.mul(&e).add(&k.constant(coeff.clone()));
            }
            assert!(acc.is_zero());
        }
    }
}

proptest! {
    #[test]
    fn count_inversion_round_trips(degrees in prop::collection::vec(1usize..=6, 0..6)) {
        let lf = LocalFactor::new(degrees);
        let m = 2 * lf.degrees.iter().copied().max().unwrap_or(1);
        let counts = lf.counts(m);
        prop_assert_eq!(local_factor_from_counts(&counts).unwrap(), lf);
    }

    #[test]
    fn exp_of_counts_is_the_product(degrees in prop::collection::vec(1usize..=6, 0..6)) {
        let lf = LocalFactor::new(degrees);
        prop_assert_eq!(exp_count_series(&lf.counts(12), 12), lf.product_series(12));
    }

    #[test]
    fn perturbed_counts_are_rejected(degrees in prop::collection::vec(1usize..=4, 1..5), slot in 0usize..4) {
        // one extra point over 𝔽_{p^n}, n ≥ 2, leaves n·a_n ≡ 1 (mod n)
        let lf = LocalFactor::new(degrees);
        let mut counts = lf.counts(8);
        let n = slot + 2;
        counts[n - 1] += 1;
        prop_assert!(local_factor_from_counts(&counts).is_err());
    }
}
