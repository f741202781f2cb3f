//! Change of monomial order for zero-dimensional ideals by linear algebra in
//! the quotient algebra (FGLM).

use std::collections::HashSet;

use num_traits::{One, Zero};

use super::buchberger::{CancelToken, GroebnerBasis};
use super::order::MonomialOrder;
use super::solve::Quotient;
use crate::arith::linalg::{mat_vec, IncrementalEchelon};
use crate::arith::{Monomial, MultiPoly, Rat};
use crate::error::Result;

/// Reduced Gröbner basis for `target` of the zero-dimensional ideal with basis `gb`.
pub(super) fn fglm(gb: &GroebnerBasis, target: &MonomialOrder, cancel: &CancelToken) -> Result<GroebnerBasis> {
    if gb.is_unit_ideal() {
        return Ok(GroebnerBasis { polys: gb.polys.clone(), order: target.clone(), vars: gb.vars.clone() });
    }
    let names = gb.var_names();
    let q = Quotient::new(gb, cancel)?;
    let mut echelon = IncrementalEchelon::new(q.dim);
    // every vector handed to `echelon`, by insertion index
    let mut inserted: Vec<Monomial> = Vec::new();
    // staircase of the new order with normal-form vectors
    let mut stairs: Vec<Vec<Rat>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut polys = Vec::new();
    let mut seen = HashSet::new();
    // (monomial, staircase parent, variable); the root has no parent
    let mut candidates: Vec<(Monomial, Option<(usize, usize)>)> = vec![(Monomial::one(), None)];

    while !candidates.is_empty() {
        cancel.check()?;
        let k = (0..candidates.len()).min_by(|&a, &b| target.cmp(&candidates[a].0, &candidates[b].0)).unwrap();
        let (m, parent) = candidates.swap_remove(k);
        if !seen.insert(m) || leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        let v = match parent {
            None => q.unit(),
            Some((s, var)) => mat_vec(&q.mult[var], &stairs[s]),
        };
        inserted.push(m);
        match echelon.insert(&v) {
            None => {
                let s = stairs.len();
                stairs.push(v);
                candidates.extend((0..names.len()).map(|var| (m.mul(&Monomial::var(var, 1)), Some((s, var)))));
            }
            Some(comb) => {
                let mut terms = vec![(m, Rat::one())];
                terms.extend(comb.iter().zip(&inserted).filter(|(c, _)| !c.is_zero()).map(|(c, mono)| (*mono, -c)));
                leads.push(m);
                polys.push(MultiPoly::from_terms(&names, terms));
            }
        }
    }
    polys.sort_by(|a, b| target.cmp(&lead(a, target), &lead(b, target)));
    Ok(GroebnerBasis { polys, order: target.clone(), vars: gb.vars.clone() })
}

fn lead(p: &MultiPoly, order: &MonomialOrder) -> Monomial {
    super::buchberger::leading_monomial(p, order)
}

#[cfg(test)]
mod tests {
    use super::super::buchberger::buchberger_direct;
    use super::super::order::OrderKind;
    use super::*;

    #[test]
    fn matches_direct_lex_computation() {
        let v = ["x", "y", "z"];
        let gens: Vec<MultiPoly> = ["x^2 + y*z - 2", "y^2 - x*z + 1", "z^2 + x - y - 3"]
            .iter()
            .map(|s| MultiPoly::parse(s, &v).unwrap())
            .collect();
        let cancel = CancelToken::new();
        let graded = buchberger_direct(&gens, &MonomialOrder::grevlex(3), &cancel).unwrap();
        for prio in [vec![0, 1, 2], vec![2, 1, 0], vec![1, 2, 0]] {
            let lex = MonomialOrder::with_priority(OrderKind::Lex, prio);
            let direct = buchberger_direct(&gens, &lex, &cancel).unwrap();
            assert_eq!(fglm(&graded, &lex, &cancel).unwrap().polys, direct.polys);
        }
    }
}
