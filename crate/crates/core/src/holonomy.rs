//! Explicit Riley-form representations: solve the representation ideal with
//! `x·y` inverted, read off characters, and group solutions by character.

use num_traits::One;

use crate::arith::algebraic::{min_poly_mod, mul_mod};
use crate::arith::{rint, Monomial, MultiPoly, Rat, UniPoly};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, solve_zero_dim_with, AlgebraicComponent, MonomialOrder, SolveOptions};
use crate::number_field::{express_in_powers, subfield_generated, NumberField, Subfield};
use crate::presentation::GroupPresentation;
use crate::trace::{reducibility_locus, riley_ideal, TRACE_VARS};

/// Riley coordinates plus `u = 1/(xy)`.
pub const HOLONOMY_VARS: [&str; 4] = ["x", "y", "r", "u"];

/// One Galois orbit of Riley-form representations
/// `ρ(a) = [[x, 1], [0, 1/x]]`, `ρ(b) = [[y, 0], [r, 1/y]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomySolution {
    pub base_field: NumberField,
    /// Elements of `base_field`.
    pub x: UniPoly,
    pub y: UniPoly,
    pub r: UniPoly,
    /// `(tr a, tr b, tr ab)` in `base_field`.
    pub character: [UniPoly; 3],
    pub is_irreducible: bool,
}

impl HolonomySolution {
    fn inv(&self, e: &UniPoly) -> UniPoly {
        let k = &self.base_field;
        k.elem(e.clone()).inv().expect("Riley coordinates are units").rep
    }

    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        mul_mod(a, b, &self.base_field.h)
    }

    pub fn x_min_poly(&self) -> UniPoly {
        min_poly_mod(&self.x, &self.base_field.h)
    }

    pub fn y_min_poly(&self) -> UniPoly {
        min_poly_mod(&self.y, &self.base_field.h)
    }

    /// tr ρ([a,b]) from the 2×2 matrices themselves.
    pub fn commutator_trace(&self) -> UniPoly {
        type M = [[UniPoly; 2]; 2];
        let z = UniPoly::zero;
        let (xi, yi) = (self.inv(&self.x), self.inv(&self.y));
        let neg = |p: &UniPoly| p.scale(&rint(-1));
        let a: M = [[self.x.clone(), UniPoly::one()], [z(), xi.clone()]];
        let a_inv: M = [[xi, neg(&UniPoly::one())], [z(), self.x.clone()]];
        let b: M = [[self.y.clone(), z()], [self.r.clone(), yi.clone()]];
        let b_inv: M = [[yi, z()], [neg(&self.r), self.y.clone()]];
        let mm = |m: &M, n: &M| -> M {
            let e = |i: usize, j: usize| &self.mul(&m[i][0], &n[0][j]) + &self.mul(&m[i][1], &n[1][j]);
            [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
        };
        let c = mm(&mm(&mm(&a, &b), &a_inv), &b_inv);
        (&c[0][0] + &c[1][1]).rem(&self.base_field.h)
    }

    fn component(&self) -> AlgebraicComponent {
        AlgebraicComponent {
            vars: TRACE_VARS.iter().map(|s| s.to_string()).collect(),
            field_poly: self.base_field.h.clone(),
            coords: self.character.to_vec(),
            multiplicity_free: true,
        }
    }
}

/// A character orbit: the subfield generated by its traces and the traces
/// written in that subfield's generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTriple {
    /// Monic integral defining polynomial of the character field.
    pub field_poly: UniPoly,
    /// `(tr a, tr b, tr ab)` as polynomials in the character field generator.
    pub coords: [UniPoly; 3],
}

impl CharacterTriple {
    pub fn as_component(&self) -> AlgebraicComponent {
        AlgebraicComponent {
            vars: TRACE_VARS.iter().map(|s| s.to_string()).collect(),
            field_poly: self.field_poly.clone(),
            coords: self.coords.to_vec(),
            multiplicity_free: true,
        }
    }
}

/// The character field of an irreducible solution, preferring a single
/// trace coordinate as its generator.
pub fn character_of(sol: &HolonomySolution) -> Result<CharacterTriple> {
    if !sol.is_irreducible {
        return Err(Error::Domain("reducible representation has no canonical character field".into()));
    }
    let k = &sol.base_field;
    let full = subfield_generated(k, &sol.character, k.degree)?;
    let sub = sol
        .character
        .iter()
        .map(|c| subfield_generated(k, std::slice::from_ref(c), k.degree))
        .find_map(|s| s.ok().filter(|s| s.field.degree == full.field.degree))
        .unwrap_or(full);
    express_triple(k, &sub, &sol.character)
}

fn express_triple(k: &NumberField, sub: &Subfield, ch: &[UniPoly; 3]) -> Result<CharacterTriple> {
    let mut coords: [UniPoly; 3] = Default::default();
    for (slot, c) in coords.iter_mut().zip(ch) {
        *slot = sub
            .express(k, c)
            .ok_or_else(|| Error::Inconsistent("trace outside the field it generates".into()))?;
    }
    Ok(CharacterTriple { field_poly: sub.field.h.clone(), coords })
}

/// Canonical key of a character orbit: the minimal polynomial of
/// `ℓ = tr a + c·tr b + c²·tr ab` for the first `c` making ℓ primitive in the
/// character field, and the traces as polynomials in ℓ.
fn orbit_key(sol: &HolonomySolution) -> Result<(UniPoly, Vec<UniPoly>)> {
    let k = &sol.base_field;
    let full = subfield_generated(k, &sol.character, k.degree)?;
    for c in 1i64.. {
        let c = Rat::from_integer(c.into());
        let ell = &(&sol.character[0] + &sol.character[1].scale(&c)) + &sol.character[2].scale(&(&c * &c));
        let m = min_poly_mod(&ell, &k.h);
        if m.degree() != Some(full.field.degree) {
            continue;
        }
        let mut coords = Vec::new();
        for t in &sol.character {
            let e = express_in_powers(k, &ell, full.field.degree, t)
                .ok_or_else(|| Error::Inconsistent("trace outside the field it generates".into()))?;
            coords.push(e);
        }
        return Ok((m, coords));
    }
    unreachable!()
}

/// Solutions grouped by character orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterClass {
    /// Indices into the solution list.
    pub solutions: Vec<usize>,
    pub character: CharacterTriple,
    /// The character field has exactly one complex place; discreteness and
    /// faithfulness are not checked.
    pub candidate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyReport {
    pub solutions: Vec<HolonomySolution>,
    pub classes: Vec<CharacterClass>,
}

/// All Riley-form representations with `x·y ≠ 0`, as Galois orbits.
pub fn solve_holonomy(pres: &GroupPresentation) -> Result<HolonomyReport> {
    let riley = riley_ideal(pres)?;
    let mut gens: Vec<MultiPoly> = riley.generators.iter().map(|g| g.rename(&HOLONOMY_VARS, &[0, 1, 2])).collect();
    gens.push(MultiPoly::from_terms(
        &HOLONOMY_VARS,
        [(Monomial([1, 1, 0, 1, 0, 0]), Rat::one()), (Monomial::one(), rint(-1))],
    ));
    let gb = buchberger(&gens, &MonomialOrder::grevlex(4));
    if gb.is_unit_ideal() {
        return Ok(HolonomyReport { solutions: Vec::new(), classes: Vec::new() });
    }
    let opts = SolveOptions { prefer: vec![0, 1, 2], ..Default::default() };
    let comps = solve_zero_dim_with(&gb, &opts)?;
    let kappa = reducibility_locus();
    let mut solutions = Vec::with_capacity(comps.len());
    for comp in comps {
        let base_field = NumberField::new(comp.field_poly.clone())?;
        let h = &base_field.h;
        let [x, y, r, u] = <[UniPoly; 4]>::try_from(comp.coords).expect("four Riley coordinates");
        // 1/x = u·y and 1/y = u·x
        let tr_a = (&x + &mul_mod(&u, &y, h)).rem(h);
        let tr_b = (&y + &mul_mod(&u, &x, h)).rem(h);
        let tr_ab = (&(&mul_mod(&x, &y, h) + &r) + &u).rem(h);
        let mut sol = HolonomySolution {
            base_field,
            x,
            y,
            r,
            character: [tr_a, tr_b, tr_ab],
            is_irreducible: false,
        };
        sol.is_irreducible = !sol.component().eval(&kappa).is_zero();
        solutions.push(sol);
    }
    let mut keyed: Vec<((UniPoly, Vec<UniPoly>), usize)> = Vec::new();
    for (i, s) in solutions.iter().enumerate().filter(|(_, s)| s.is_irreducible) {
        keyed.push((orbit_key(s)?, i));
    }
    let mut classes: Vec<(CharacterClass, (UniPoly, Vec<UniPoly>))> = Vec::new();
    for (key, i) in keyed {
        if let Some((cls, _)) = classes.iter_mut().find(|(_, k)| *k == key) {
            cls.solutions.push(i);
            continue;
        }
        let character = character_of(&solutions[i])?;
        let candidate = NumberField::new(character.field_poly.clone())?.complex_places() == 1;
        classes.push((CharacterClass { solutions: vec![i], character, candidate }, key));
    }
    Ok(HolonomyReport { solutions, classes: classes.into_iter().map(|(c, _)| c).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn trivial_relator_has_no_solutions() {
        let pres = parse_presentation("gens: a b; rels: a").unwrap();
        assert!(solve_holonomy(&pres).unwrap().solutions.is_empty());
    }

    #[test]
    fn commutator_trace_two_ways() {
        let pres = crate::presets::presentation("weeks").unwrap();
        let rep = solve_holonomy(&pres).unwrap();
        let comm = crate::trace::trace_polynomial(&crate::presentation::Word::parse("abAB", 2).unwrap()).unwrap();
        for s in &rep.solutions {
            assert_eq!(s.commutator_trace(), s.component().eval(&comm));
            assert_eq!(s.is_irreducible, s.commutator_trace() != UniPoly::constant(rint(2)));
        }
    }
}
