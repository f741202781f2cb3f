//! Trace polynomials of two-generator words and the ideals built from them.
//!
//! Coordinates are `x = tr a`, `y = tr b`, `z = tr ab`. Every product of
//! `A = ρ(a)`, `B = ρ(b)` and their inverses lies in the ℤ[x,y,z]-span of
//! `I, A, B, AB` (Cayley–Hamilton), so a word is evaluated by carrying four
//! coefficients while multiplying on the right one letter at a time.

use serde::{Deserialize, Serialize};

use crate::arith::{rint, Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::presentation::{GroupPresentation, Letter, Word};

pub const TRACE_VARS: [&str; 3] = ["x", "y", "z"];
pub const RILEY_VARS: [&str; 3] = ["x", "y", "r"];

/// `c[0]·I + c[1]·A + c[2]·B + c[3]·AB`.
#[derive(Clone)]
struct AlgebraElem {
    c: [MultiPoly; 4],
}

struct Ring {
    x: MultiPoly,
    y: MultiPoly,
    z: MultiPoly,
    z_minus_xy: MultiPoly,
}

impl Ring {
    fn new() -> Self {
        let x = MultiPoly::var(&TRACE_VARS, 0);
        let y = MultiPoly::var(&TRACE_VARS, 1);
        let z = MultiPoly::var(&TRACE_VARS, 2);
        let z_minus_xy = &z - &(&x * &y);
        Ring { x, y, z, z_minus_xy }
    }

    fn identity(&self) -> AlgebraElem {
        let zero = MultiPoly::zero(&TRACE_VARS);
        AlgebraElem { c: [MultiPoly::constant(&TRACE_VARS, rint(1)), zero.clone(), zero.clone(), zero] }
    }

    /// Uses `A² = xA − I`, `BA = −AB + yA + xB + (z − xy)I`, `AB·A = zA + B − yI`.
    fn times_a(&self, e: &AlgebraElem) -> AlgebraElem {
        let [c0, c1, c2, c3] = &e.c;
        let n0 = &(&(-c1) + &(&self.z_minus_xy * c2)) - &(&self.y * c3);
        let n1 = &(&(c0 + &(&self.x * c1)) + &(&self.y * c2)) + &(&self.z * c3);
        let n2 = &(&self.x * c2) + c3;
        let n3 = -c2;
        AlgebraElem { c: [n0, n1, n2, n3] }
    }

    /// Uses `B² = yB − I`, `A·B = AB`, `AB·B = y·AB − A`.
    fn times_b(&self, e: &AlgebraElem) -> AlgebraElem {
        let [c0, c1, c2, c3] = &e.c;
        let n0 = -c2;
        let n1 = -c3;
        let n2 = c0 + &(&self.y * c2);
        let n3 = c1 + &(&self.y * c3);
        AlgebraElem { c: [n0, n1, n2, n3] }
    }

    fn scale(&self, e: &AlgebraElem, s: &MultiPoly) -> AlgebraElem {
        AlgebraElem { c: [s * &e.c[0], s * &e.c[1], s * &e.c[2], s * &e.c[3]] }
    }

    fn sub(&self, u: &AlgebraElem, v: &AlgebraElem) -> AlgebraElem {
        AlgebraElem { c: [&u.c[0] - &v.c[0], &u.c[1] - &v.c[1], &u.c[2] - &v.c[2], &u.c[3] - &v.c[3]] }
    }

    fn times_letter(&self, e: &AlgebraElem, l: Letter) -> AlgebraElem {
        match (l.gen, l.inv) {
            (0, false) => self.times_a(e),
            (1, false) => self.times_b(e),
            // A⁻¹ = x·I − A
            (0, true) => self.sub(&self.scale(e, &self.x), &self.times_a(e)),
            (1, true) => self.sub(&self.scale(e, &self.y), &self.times_b(e)),
            _ => unreachable!("rank checked by caller"),
        }
    }

    fn trace(&self, e: &AlgebraElem) -> MultiPoly {
        let two = MultiPoly::constant(&TRACE_VARS, rint(2));
        let t = &(&two * &e.c[0]) + &(&self.x * &e.c[1]);
        &(&t + &(&self.y * &e.c[2])) + &(&self.z * &e.c[3])
    }
}

fn require_two_generators(rank: usize) -> Result<()> {
    if rank != 2 {
        return Err(Error::Unsupported(format!(
            "trace coordinates need exactly 2 generators, got {rank}"
        )));
    }
    Ok(())
}

/// `tr ρ(w)` as a polynomial in `x, y, z`.
pub fn trace_polynomial(w: &Word) -> Result<MultiPoly> {
    require_two_generators(w.rank)?;
    let ring = Ring::new();
    let mut e = ring.identity();
    for &l in &w.reduce().letters {
        e = ring.times_letter(&e, l);
    }
    Ok(ring.trace(&e))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharIdeal {
    pub generators: Vec<MultiPoly>,
    pub source: GroupPresentation,
}

/// `{tr(w) − 2, tr(wa) − x, tr(wb) − y}` for every relator `w`.
pub fn char_ideal(pres: &GroupPresentation) -> Result<CharIdeal> {
    require_two_generators(pres.rank())?;
    let ring = Ring::new();
    let two = MultiPoly::constant(&TRACE_VARS, rint(2));
    let mut generators = Vec::with_capacity(3 * pres.relators.len());
    for w in &pres.relators {
        let mut e = ring.identity();
        for &l in &w.letters {
            e = ring.times_letter(&e, l);
        }
        let wa = ring.times_a(&e);
        let wb = ring.times_b(&e);
        generators.push(&ring.trace(&e) - &two);
        generators.push(&ring.trace(&wa) - &ring.x);
        generators.push(&ring.trace(&wb) - &ring.y);
    }
    Ok(CharIdeal { generators, source: pres.clone() })
}

/// Polynomial whose vanishing marks reducible characters: `tr ρ([a,b]) − 2`.
pub fn reducibility_locus() -> MultiPoly {
    MultiPoly::parse("x^2 + y^2 + z^2 - x*y*z - 4", &TRACE_VARS).expect("fixed polynomial parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClearedPowers {
    pub relator: usize,
    /// The relator matrix was multiplied by `x^x_pow · y^y_pow`.
    pub x_pow: u16,
    pub y_pow: u16,
}

/// Riley-form representation ideal in `x, y, r`:
/// `ρ(a) = [[x, 1], [0, 1/x]]`, `ρ(b) = [[y, 0], [r, 1/y]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RileyIdeal {
    pub generators: Vec<MultiPoly>,
    pub cleared: Vec<ClearedPowers>,
    pub source: GroupPresentation,
}

type Mat = [[MultiPoly; 2]; 2];

fn mat_mul(m: &Mat, n: &Mat) -> Mat {
    let e = |i: usize, j: usize| &(&m[i][0] * &n[0][j]) + &(&m[i][1] * &n[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn riley_ideal(pres: &GroupPresentation) -> Result<RileyIdeal> {
    require_two_generators(pres.rank())?;
    let v = |s: &str| MultiPoly::parse(s, &RILEY_VARS).expect("fixed polynomial parses");
    // letters scaled by x (resp. y) so entries are polynomial
    let letters: [Mat; 4] = [
        [[v("x^2"), v("x")], [v("0"), v("1")]],
        [[v("1"), v("-x")], [v("0"), v("x^2")]],
        [[v("y^2"), v("0")], [v("r*y"), v("1")]],
        [[v("1"), v("0")], [v("-r*y"), v("y^2")]],
    ];
    let mut generators = Vec::new();
    let mut cleared = Vec::new();
    for (idx, w) in pres.relators.iter().enumerate() {
        let mut m: Mat = [[v("1"), v("0")], [v("0"), v("1")]];
        let (mut xa, mut yb) = (0u16, 0u16);
        for l in &w.letters {
            m = mat_mul(&m, &letters[2 * l.gen + usize::from(l.inv)]);
            if l.gen == 0 {
                xa += 1;
            } else {
                yb += 1;
            }
        }
        let scale = MultiPoly::from_terms(&RILEY_VARS, [(Monomial([xa, yb, 0, 0, 0, 0]), rint(1))]);
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let mut g = m[i][j].clone();
            if i == j {
                g = &g - &scale;
            }
            if g.is_zero() {
                continue;
            }
            // strip only the x, y part of the monomial content; r = 0 is a real solution
            let mut content = g.monomial_content();
            content.0[2] = 0;
            generators.push(g.div_monomial(&content));
        }
        cleared.push(ClearedPowers { relator: idx, x_pow: xa, y_pow: yb });
    }
    Ok(RileyIdeal { generators, cleared, source: pres.clone() })
}
