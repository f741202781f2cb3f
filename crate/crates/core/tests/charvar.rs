use charzeta_core::arith::{algebraic::min_poly_mod, MultiPoly, UniPoly};
use charzeta_core::groebner::{
    buchberger, filter_irreducible, solve_zero_dim, solve_zero_dim_with, AlgebraicComponent, MonomialOrder,
    SolveOptions,
};
use charzeta_core::presets;
use charzeta_core::trace::{char_ideal, reducibility_locus, TRACE_VARS};

fn weeks_components() -> (Vec<MultiPoly>, Vec<AlgebraicComponent>) {
    let pres = presets::presentation("weeks").unwrap();
    let ideal = char_ideal(&pres).unwrap();
    let gb = buchberger(&ideal.generators, &MonomialOrder::grevlex(3));
    let opts = SolveOptions { prefer: vec![2, 0, 1], ..Default::default() };
    (ideal.generators, solve_zero_dim_with(&gb, &opts).unwrap())
}

fn family(h: &[i64], coords: [&[i64]; 3]) -> AlgebraicComponent {
    AlgebraicComponent {
        vars: TRACE_VARS.iter().map(|s| s.to_string()).collect(),
        field_poly: UniPoly::from_ints(h),
        coords: coords.iter().map(|c| UniPoly::from_ints(c)).collect(),
        multiplicity_free: true,
    }
}

/// The published point list: (2,2,2); (α,α,2) and permutations; (α,−1−α,α) and
/// permutations; (1−β²,1−β²,β).
fn weeks_published() -> Vec<AlgebraicComponent> {
    let quad = [-1, 1, 1];
    let a: &[i64] = &[0, 1];
    let abar: &[i64] = &[-1, -1];
    let two: &[i64] = &[2];
    vec![
        family(&[-2, 1], [two, two, two]),
        family(&quad, [a, a, two]),
        family(&quad, [a, two, a]),
        family(&quad, [two, a, a]),
        family(&quad, [a, abar, a]),
        family(&quad, [abar, a, a]),
        family(&quad, [abar, abar, a]),
        family(&[-1, -1, 0, 1], [&[1, 0, -1], &[1, 0, -1], &[0, 1]]),
    ]
}

#[test]
fn weeks_point_set_matches_published_list() {
    let (gens, comps) = weeks_components();
    let total: usize = comps.iter().map(|c| c.degree()).sum();
    assert_eq!(total, 16);
    assert!(comps.iter().all(|c| c.multiplicity_free));

    let published = weeks_published();
    // every published point is a zero of the ideal
    for f in &published {
        assert!(f.satisfies(&gens), "published family {:?} off the variety", f.coords);
    }
    // the 16 published points are distinct: x + 3y + 9z separates them
    let ell = MultiPoly::parse("x + 3*y + 9*z", &TRACE_VARS).unwrap();
    let mut prod = UniPoly::one();
    for f in &published {
        let m = min_poly_mod(&f.eval(&ell), &f.field_poly);
        assert_eq!(m.degree(), Some(f.degree()));
        prod = &prod * &m;
    }
    assert_eq!(prod.degree(), Some(16));
    assert!(prod.is_squarefree());

    let mut fields: Vec<String> = comps.iter().map(|c| c.field_poly.to_string()).collect();
    fields.sort();
    let mut expected: Vec<String> = published.iter().map(|c| c.field_poly.to_string()).collect();
    expected.sort();
    assert_eq!(fields, expected);
}

#[test]
fn weeks_irreducible_part_is_the_cubic() {
    let (_, comps) = weeks_components();
    let irr = filter_irreducible(&comps, &reducibility_locus());
    assert_eq!(irr.len(), 1);
    assert_eq!(irr[0].field_poly, UniPoly::from_ints(&[-1, -1, 0, 1]));
    // shape (1 − T², 1 − T², T)
    assert_eq!(irr[0].coords[0], UniPoly::from_ints(&[1, 0, -1]));
    assert_eq!(irr[0].coords[1], UniPoly::from_ints(&[1, 0, -1]));
    assert_eq!(irr[0].coords[2], UniPoly::x());
    assert_eq!(irr[0].field_poly.discriminant().unwrap(), charzeta_core::arith::rint(-23));
}

#[test]
fn weeks_lex_eliminant() {
    let pres = presets::presentation("weeks").unwrap();
    let ideal = char_ideal(&pres).unwrap();
    let gb = buchberger(&ideal.generators, &MonomialOrder::lex(3));
    let elim = gb.univariate_in(2);
    assert_eq!(elim.len(), 1);
    // (z − 2)(z² + z − 1)(z³ − z − 1)
    let expected = &(&MultiPoly::parse("z - 2", &TRACE_VARS).unwrap()
        * &MultiPoly::parse("z^2 + z - 1", &TRACE_VARS).unwrap())
        * &MultiPoly::parse("z^3 - z - 1", &TRACE_VARS).unwrap();
    assert_eq!(*elim[0], expected);
}

#[test]
fn order_independence_of_solutions() {
    let pres = presets::presentation("weeks").unwrap();
    let ideal = char_ideal(&pres).unwrap();
    let signature = |comps: &[AlgebraicComponent]| {
        let mut v: Vec<(String, Vec<String>)> = comps
            .iter()
            .map(|c| {
                let mins = (0..3).map(|i| c.coordinate_min_poly(i).to_string()).collect();
                (min_poly_mod(&UniPoly::x(), &c.field_poly).to_string(), mins)
            })
            .collect();
        v.sort();
        v
    };
    let lex = buchberger(&ideal.generators, &MonomialOrder::lex(3));
    let revlex = buchberger(
        &ideal.generators,
        &MonomialOrder::with_priority(charzeta_core::groebner::OrderKind::Lex, vec![2, 1, 0]),
    );
    let a = solve_zero_dim(&lex).unwrap();
    let b = solve_zero_dim(&revlex).unwrap();
    let sa = signature(&a);
    let sb = signature(&b);
    // coordinate minimal polynomials per component agree as multisets
    let strip = |s: Vec<(String, Vec<String>)>| s.into_iter().map(|(_, m)| m).collect::<Vec<_>>();
    let (mut ma, mut mb) = (strip(sa), strip(sb));
    ma.sort();
    mb.sort();
    assert_eq!(ma, mb);
}
