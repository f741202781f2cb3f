use charzeta_core::arith::{rint, Monomial, MultiPoly, MAX_VARS};
use charzeta_core::groebner::{buchberger, leading_monomial, normal_form, s_polynomial, MonomialOrder};
use charzeta_core::presentation::{abelianization, count_sign_homomorphisms, GroupPresentation};
use proptest::prelude::*;

const V: [&str; 3] = ["x", "y", "z"];

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec(((0u16..3, 0u16..3, 0u16..2), -4i64..5), 1..5).prop_map(|ts| {
        MultiPoly::from_terms(
            &V,
            ts.into_iter().filter(|((a, b, c), _)| a + b + c <= 2).map(|((a, b, c), k)| {
                let mut m = [0u16; MAX_VARS];
                m[0] = a;
                m[1] = b;
                m[2] = c;
                (Monomial(m), rint(k))
            }),
        )
    })
}

fn orders() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::grevlex(3)), Just(MonomialOrder::lex(3))]
}

fn word(letters: &'static [char]) -> impl Strategy<Value = String> {
    proptest::collection::vec(proptest::sample::select(letters), 1..10).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Buchberger's criterion on the output, generator membership, and
    /// membership of random combinations.
    #[test]
    fn groebner_bases_are_closed_under_s_polynomials(
        gens in proptest::collection::vec(small_poly(), 1..4),
        mults in proptest::collection::vec(small_poly(), 3),
        order in orders(),
    ) {
        let gb = buchberger(&gens, &order);
        for (i, f) in gb.polys.iter().enumerate() {
            for g in &gb.polys[i + 1..] {
                prop_assert!(normal_form(&s_polynomial(f, g, &order), &gb).is_zero());
            }
        }
        for f in &gens {
            prop_assert!(normal_form(f, &gb).is_zero());
        }
        let mut comb = MultiPoly::zero(&V);
        for (f, q) in gens.iter().zip(&mults) {
            comb = &comb + &(f * q);
        }
        prop_assert!(normal_form(&comb, &gb).is_zero());
        // reduced: no term of one element is divisible by another's leading monomial
        let lms = gb.leading_monomials();
        for (i, f) in gb.polys.iter().enumerate() {
            prop_assert_eq!(leading_monomial(f, &order), lms[i]);
            for (m, _) in f.terms() {
                for (j, lm) in lms.iter().enumerate() {
                    prop_assert!(i == j || !lm.divides(m));
                }
            }
        }
    }

    /// The Smith-normal-form count of sign characters agrees with trying
    /// every assignment of ±1 to the generators.
    #[test]
    fn h1_from_smith_form_matches_brute_force(
        rels in proptest::collection::vec(word(&['a', 'b', 'c', 'A', 'B', 'C']), 1..4),
        rank3 in any::<bool>(),
    ) {
        let (gens, rels): (&[char], Vec<String>) = if rank3 {
            (&['a', 'b', 'c'], rels)
        } else {
            (&['a', 'b'], rels.iter().map(|w| w.replace(['c', 'C'], "")).filter(|w| !w.is_empty()).collect())
        };
        prop_assume!(!rels.is_empty());
        let refs: Vec<&str> = rels.iter().map(|s| s.as_str()).collect();
        // freely trivial relators are rejected by construction
        let pres = GroupPresentation::from_relators(gens, &refs);
        prop_assume!(pres.is_ok());
        let pres = pres.unwrap();
        let ab = abelianization(&pres);
        prop_assert_eq!(ab.h1_c2_order, count_sign_homomorphisms(&pres));
        // finite abelianization iff full rank; then its order is the product of the factors
        if !ab.invariant_factors.contains(&0) && rels.len() == gens.len() && gens.len() == 2 {
            let m = charzeta_core::presentation::exponent_sum_matrix(&pres);
            let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
            prop_assert_eq!(det, ab.invariant_factors.iter().product::<i64>());
        }
    }
}
