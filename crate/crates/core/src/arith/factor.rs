//! Factorization of univariate polynomials over ℚ.
//!
//! Squarefree decomposition over ℚ, then for each squarefree part: modular
//! factorization at a few good primes, linear Hensel lifting of the best one
//! past a coefficient bound, and exhaustive recombination of lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::fp::{factor_fp, FpPoly};
use super::{Rat, UniPoly};

type ZPoly = Vec<BigInt>;

/// Monic irreducible factors over ℚ with multiplicities, sorted by degree
/// then coefficients.
pub fn factor_over_q(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition_q(f) {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    out
}

/// Irreducible monic factors of a squarefree polynomial.
pub fn factor_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let d = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    if d == 1 {
        return vec![f.monic()];
    }
    // strip the factor T^k
    let k = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        let mut out = vec![UniPoly::x()];
        let rest = UniPoly::new(f.coeffs()[k..].to_vec());
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let (_, prim) = f.primitive_integer();
    zassenhaus(&prim)
        .into_iter()
        .map(|g| UniPoly::from_bigints(&g).monic())
        .collect()
}

pub fn is_irreducible_q(f: &UniPoly) -> bool {
    f.deg() >= 1 && f.is_squarefree() && factor_squarefree(f).len() == 1
}

/// Yun's algorithm over ℚ; parts are monic.
pub fn squarefree_decomposition_q(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() < 1 {
        return out;
    }
    let f = f.monic();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.divrem(&a0).0;
    let mut c = fp.divrem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        if a.deg() > 0 {
            out.push((a, i));
        }
        if b.deg() < 1 {
            break;
        }
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    // monic transform F(x) = lc^(n-1) f(x / lc)
    let mut big_f: ZPoly = Vec::with_capacity(n + 1);
    for (i, c) in f.iter().enumerate() {
        if i == n {
            big_f.push(BigInt::one());
        } else {
            big_f.push(c * num_traits::pow(lc.clone(), n - 1 - i));
        }
    }

    let (p, modular) = match choose_prime(&big_f) {
        Some(x) => x,
        None => return vec![f.clone()],
    };
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // any factor of a monic F has coefficients bounded by 2^n·‖F‖₂
    let norm2: BigInt = big_f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1;
    while modulus <= &bound * 2u32 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift_all(&big_f, &modular, p, k);

    let monic_factors = recombine(&big_f, lifted, &modulus);
    monic_factors
        .into_iter()
        .map(|g| {
            // undo the transform: g(lc·x), then take the primitive part
            let mut h: ZPoly = g
                .iter()
                .enumerate()
                .map(|(i, c)| c * num_traits::pow(lc.clone(), i))
                .collect();
            let cont = h.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            for c in h.iter_mut() {
                *c /= &cont;
            }
            if h.last().unwrap().is_negative() {
                for c in h.iter_mut() {
                    *c = -c.clone();
                }
            }
            h
        })
        .collect()
}

/// Picks the good prime with the fewest modular factors among the first few.
fn choose_prime(f: &ZPoly) -> Option<(u64, Vec<FpPoly>)> {
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 7 && p < 10_000 {
        p += 1;
        if !super::is_prime(p) {
            continue;
        }
        let fp = zpoly_mod(f, p);
        if fp.deg() != f.len() - 1 || !fp.gcd(&fp.derivative()).is_one() {
            continue;
        }
        tried += 1;
        let facs: Vec<FpPoly> = factor_fp(&fp).into_iter().map(|(g, _)| g).collect();
        let better = best.as_ref().map_or(true, |(_, b)| facs.len() < b.len());
        if better {
            let done = facs.len() == 1;
            best = Some((p, facs));
            if done {
                break;
            }
        }
    }
    best
}

fn zpoly_mod(f: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(p, f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn fp_to_z(f: &FpPoly) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect()
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut v: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Lifts `f ≡ ∏ factors (mod p)` to a factorization mod `p^k` with monic factors.
fn hensel_lift_all(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    let mut out = Vec::new();
    let mut current = zmod(f, &modulus);
    for i in 0..factors.len() {
        if i + 1 == factors.len() {
            out.push(current.clone());
            break;
        }
        let g = factors[i].clone();
        let h = factors[i + 1..]
            .iter()
            .fold(FpPoly::one(p), |acc, x| acc.mul(x));
        let (lg, lh) = hensel_lift_pair(&current, &g, &h, p, k);
        out.push(lg);
        current = lh;
    }
    out
}

/// Linear Hensel lifting of `f ≡ g·h (mod p)`, `g`, `h` monic coprime.
fn hensel_lift_pair(f: &ZPoly, g: &FpPoly, h: &FpPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = g.xgcd(h);
    debug_assert!(one.is_one());
    let pb = BigInt::from(p);
    let mut gz = fp_to_z(g);
    let mut hz = fp_to_z(h);
    let mut pj = pb.clone();
    for _ in 1..k {
        let e = zsub(f, &zmul(&gz, &hz));
        // e is divisible by p^j
        let c_int: ZPoly = e.iter().map(|v| v.div_floor(&pj)).collect();
        let c = zpoly_mod(&c_int, p);
        let (q, a) = c.mul(&t).divrem(g);
        let b = c.mul(&s).add(&q.mul(h));
        let az: ZPoly = fp_to_z(&a).into_iter().map(|v| v * &pj).collect();
        let bz: ZPoly = fp_to_z(&b).into_iter().map(|v| v * &pj).collect();
        gz = zadd(&gz, &az);
        hz = zadd(&hz, &bz);
        pj *= &pb;
    }
    (zmod(&gz, &pj), zmod(&hz, &pj))
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut v: ZPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact division of monic integer polynomials; `None` if it does not divide.
fn zdiv_exact(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    debug_assert!(g[dg].is_one());
    let mut r = f.clone();
    let mut q = vec![BigInt::zero(); f.len() - dg];
    for i in (0..q.len()).rev() {
        let c = r[i + dg].clone();
        if !c.is_zero() {
            for (j, gc) in g.iter().enumerate() {
                r[i + j] -= &c * gc;
            }
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut result = Vec::new();
    let mut f = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut prod: ZPoly = vec![BigInt::one()];
            for &i in &idx {
                prod = zmod(&zmul(&prod, &lifted[i]), modulus);
            }
            let cand = symmetric(&prod, modulus);
            let const_ok = cand.first().map_or(true, |c0| {
                c0.is_zero() || f[0].is_zero() || (&f[0] % c0).is_zero()
            });
            if const_ok {
                if let Some(q) = zdiv_exact(&f, &cand) {
                    result.push(cand);
                    f = q;
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    found = true;
                    break;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.len() > 1 {
        result.push(f);
    }
    result
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Rational roots of a polynomial (distinct).
pub fn rational_roots(f: &UniPoly) -> Vec<Rat> {
    factor_over_q(f)
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| -g.coeff(0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn product(fs: &[(UniPoly, usize)]) -> UniPoly {
        fs.iter().fold(UniPoly::one(), |acc, (g, m)| &acc * &g.pow(*m as u32))
    }

    #[test]
    fn weeks_eliminant_splits_into_three() {
        let f = &(&p(&[-2, 1]) * &p(&[-1, 1, 1])) * &p(&[-1, -1, 0, 1]);
        let fs = factor_over_q(&f);
        assert_eq!(
            fs,
            vec![(p(&[-2, 1]), 1), (p(&[-1, 1, 1]), 1), (p(&[-1, -1, 0, 1]), 1)]
        );
    }

    #[test]
    fn swinnerton_dyer_like_quartic_is_irreducible() {
        // T^4 - 10T^2 + 1 splits mod every prime but is irreducible over Q
        assert!(is_irreducible_q(&p(&[1, 0, -10, 0, 1])));
        assert!(!is_irreducible_q(&p(&[4, 0, 0, 0, 1]))); // (T^2+2T+2)(T^2-2T+2)
    }

    #[test]
    fn non_monic_and_repeated() {
        let a = p(&[1, 3]);
        let b = p(&[-1, 0, 2]);
        let f = &(&a * &a) * &b;
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs), f.monic());
        assert_eq!(rational_roots(&f), vec![crate::arith::rat(-1, 3)]);
    }

    #[test]
    fn cyclotomic_product() {
        let f = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]); // T^12 - 1
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 6);
        assert_eq!(product(&fs), f);
        assert!(fs.iter().all(|(g, _)| is_irreducible_q(g)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn product_of_factors_reconstructs(
            a in proptest::collection::vec(-6i64..7, 2..5),
            b in proptest::collection::vec(-6i64..7, 2..5),
        ) {
            let mut a = a; let mut b = b;
            *a.last_mut().unwrap() = 1; *b.last_mut().unwrap() = 1;
            let f = &p(&a) * &p(&b);
            let fs = factor_over_q(&f);
            prop_assert_eq!(product(&fs), f.monic());
            for (g, _) in &fs {
                prop_assert_eq!(factor_squarefree(g).len(), 1);
            }
        }
    }
}
