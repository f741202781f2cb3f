use charzeta_core::arith::{rat, MultiPoly, Rat};
use charzeta_core::groebner::{buchberger, solve_zero_dim_with, MonomialOrder, SolveOptions};
use charzeta_core::presentation::{GroupPresentation, Letter, Word};
use charzeta_core::presets;
use charzeta_core::trace::{char_ideal, reducibility_locus, riley_ideal, trace_polynomial, TRACE_VARS};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Mat = [[Rat; 2]; 2];

fn mul(a: &Mat, b: &Mat) -> Mat {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn inv(a: &Mat) -> Mat {
    // determinant one
    [[a[1][1].clone(), -a[0][1].clone()], [-a[1][0].clone(), a[0][0].clone()]]
}

fn identity() -> Mat {
    [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]]
}

fn tr(a: &Mat) -> Rat {
    &a[0][0] + &a[1][1]
}

fn eval_word(w: &Word, a: &Mat, b: &Mat) -> Mat {
    let mats = [a.clone(), b.clone(), inv(a), inv(b)];
    w.letters.iter().fold(identity(), |acc, l| mul(&acc, &mats[l.gen + 2 * usize::from(l.inv)]))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let mut n = rng.gen_range(-9i64..=9);
    if n == 0 {
        n = 1;
    }
    rat(n, rng.gen_range(1..=5))
}

/// Random element of SL₂(ℚ): pick a, b, c with a ≠ 0, then d = (1 + bc)/a.
fn random_sl2(rng: &mut ChaCha8Rng) -> Mat {
    let (a, b, c) = (random_rat(rng), random_rat(rng), random_rat(rng));
    let d = (Rat::one() + &b * &c) / &a;
    [[a, b], [c, d]]
}

fn random_word(rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..=12);
    let letters = (0..len).map(|_| Letter { gen: rng.gen_range(0..2), inv: rng.gen_bool(0.5) }).collect();
    Word { rank: 2, letters }
}

#[test]
fn trace_polynomials_agree_with_matrix_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let words: Vec<Word> = (0..50).map(|_| random_word(&mut rng)).collect();
    let pairs: Vec<(Mat, Mat)> = (0..20).map(|_| (random_sl2(&mut rng), random_sl2(&mut rng))).collect();
    for w in &words {
        let poly = trace_polynomial(w).unwrap();
        assert!(poly.total_degree() <= w.len() as i64);
        for (a, b) in &pairs {
            let coords = [tr(a), tr(b), tr(&mul(a, b))];
            assert_eq!(poly.eval(&coords), tr(&eval_word(w, a, b)), "word {}", w.to_text(&['a', 'b']));
        }
    }
}

#[test]
fn trace_is_invariant_under_inversion_and_rotation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let w = random_word(&mut rng);
        let t = trace_polynomial(&w).unwrap();
        assert_eq!(trace_polynomial(&w.inverse()).unwrap(), t);
        for k in 0..w.len() {
            let mut letters = w.letters[k..].to_vec();
            letters.extend_from_slice(&w.letters[..k]);
            assert_eq!(trace_polynomial(&Word { rank: 2, letters }).unwrap(), t);
        }
    }
}

#[test]
fn commutator_trace_matches_reducibility_polynomial() {
    let comm = trace_polynomial(&Word::parse("abAB", 2).unwrap()).unwrap();
    let two = MultiPoly::constant(&TRACE_VARS, rat(2, 1));
    assert_eq!(&comm - &two, reducibility_locus());
    let kappa = reducibility_locus();
    assert!(kappa.eval(&[rat(2, 1), rat(2, 1), rat(2, 1)]).is_zero());
}

#[test]
fn char_ideal_vanishes_on_representations_of_a_cyclic_quotient() {
    // ⟨a,b | ab⟩: b = a⁻¹ for any a ∈ SL₂(ℚ)
    let pres = GroupPresentation::from_relators(&['a', 'b'], &["ab"]).unwrap();
    let ideal = char_ideal(&pres).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let a = random_sl2(&mut rng);
        let b = inv(&a);
        let coords = [tr(&a), tr(&b), tr(&mul(&a, &b))];
        assert!(ideal.generators.iter().all(|g| g.eval(&coords).is_zero()));
    }
}

/// The simplified generators printed for the Weeks manifold (a Gröbner basis
/// of the character ideal, computed elsewhere).
fn weeks_published_generators() -> Vec<MultiPoly> {
    [
        "-2 + z + 4*z^2 + 2*z^3 - 4*z^4 - z^5 + z^6",
        "-2 + 3*z + 3*z^2 - 4*z^3 + 2*y - 3*y*z - y*z^2 - z^4 + z^5 + y*z^3",
        "-z - 3*y + 4 - 4*z^2 + z^4 - y^2 + y^3",
        "-y*z^2 + x*z^2 - y*z + x*z + y - x",
        "-x + z - 3*z^3 + 2*z^2 + z^5 + x*y - y*z - z^4 - y^2*z + x*y^2",
        "-z^4 - 4 - x*y*z + z^3 + y^2 + x^2 + 4*z^2 - 2*z",
    ]
    .iter()
    .map(|s| MultiPoly::parse(s, &TRACE_VARS).unwrap())
    .collect()
}

#[test]
fn weeks_zero_set_matches_published_generators() {
    let ideal = char_ideal(&presets::presentation("weeks").unwrap()).unwrap();
    assert_eq!(ideal.generators.len(), 6);
    let opts = SolveOptions { prefer: vec![2, 0, 1], ..Default::default() };
    let order = MonomialOrder::grevlex(3);
    let ours = solve_zero_dim_with(&buchberger(&ideal.generators, &order), &opts).unwrap();
    let theirs = solve_zero_dim_with(&buchberger(&weeks_published_generators(), &order), &opts).unwrap();
    assert_eq!(ours, theirs);
}

#[test]
fn riley_ideal_of_a_killed_generator_is_inconsistent() {
    let pres = GroupPresentation::from_relators(&['a', 'b'], &["a"]).unwrap();
    let ideal = riley_ideal(&pres).unwrap();
    let gb = buchberger(&ideal.generators, &MonomialOrder::grevlex(3));
    assert!(gb.is_unit_ideal());
}
