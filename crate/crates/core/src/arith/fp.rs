//! Polynomials over a prime field 𝔽_p and their factorization.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{rat_mod_p, UniPoly};
use crate::error::{Error, Result};

/// Seed for the randomized equal-degree splitting.
pub const SPLIT_SEED: u64 = 0x5eed_c4a2_7a11_0001;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime; panics on zero.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// Dense polynomial over 𝔽_p, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for v in c.iter_mut() {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// Reduces a rational polynomial; `None` if a denominator vanishes mod p.
    pub fn from_unipoly(f: &UniPoly, p: u64) -> Option<Self> {
        f.coeffs()
            .iter()
            .map(|c| rat_mod_p(c, p))
            .collect::<Option<Vec<_>>>()
            .map(|c| Self::new(p, c))
    }

    /// Parses signed integers, reducing mod `p`.
    pub fn from_i64(p: u64, c: &[i64]) -> Self {
        Self::new(p, c.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, s: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&v| mul_mod(v, s, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            self.p,
            (0..n).map(|i| add_mod(self.coeff(i), o.coeff(i), self.p)).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            self.p,
            (0..n).map(|i| sub_mod(self.coeff(i), o.coeff(i), self.p)).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u128 * b as u128) % pp;
            }
        }
        Self::new(p, v.into_iter().map(|x| x as u64).collect())
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, p);
            if c != 0 {
                for (j, &dc) in d.c.iter().enumerate() {
                    r[i + j] = sub_mod(r[i + j], mul_mod(c, dc, p), p);
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = inv_mod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &v)| mul_mod(v, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &c in self.c.iter().rev() {
            acc = add_mod(mul_mod(acc, x, self.p), c, self.p);
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Replaces `T` by `T^(1/p)`; only valid when every exponent is divisible by p.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c: Vec<u64> = self.c.iter().step_by(p).copied().collect();
        // a^(1/p) = a in 𝔽_p
        Self::new(self.p, c)
    }

    /// Rabin-style irreducibility test via Frobenius powers.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let x = Self::x(self.p);
        let mut xp = x.clone();
        for k in 1..=n / 2 {
            xp = xp.pow_mod(self.p, &f);
            if !f.gcd(&xp.sub(&x)).is_one() {
                return false;
            }
            let _ = k;
        }
        true
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => c.to_string(),
                1 if c == 1 => var.to_string(),
                1 => format!("{c}*{var}"),
                _ if c == 1 => format!("{var}^{i}"),
                _ => format!("{c}*{var}^{i}"),
            };
            parts.push(mono);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod {}", self.fmt_var("T"), self.p)
    }
}

/// Squarefree decomposition of a monic polynomial: `(factor, multiplicity)`.
pub fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree().map_or(true, |d| d == 0) {
        return out;
    }
    let f = f.monic();
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0;
    let mut i = 1;
    while w.degree().map_or(false, |d| d > 0) {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree().map_or(false, |d| d > 0) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.degree().map_or(false, |d| d > 0) {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut h = f.monic();
    let x = FpPoly::x(p);
    let mut xq = x.clone();
    let mut d = 0;
    while let Some(deg) = h.degree() {
        if deg < 2 * (d + 1) {
            break;
        }
        d += 1;
        xq = xq.pow_mod(p, &h);
        let g = h.gcd(&xq.sub(&x));
        if !g.is_one() {
            h = h.divrem(&g).0;
            xq = xq.rem(&h);
            out.push((d, g));
        }
    }
    if h.degree().map_or(false, |d| d > 0) {
        out.push((h.deg(), h));
    }
    out
}

/// Splits a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    if d == 1 && p <= 4096 {
        return (0..p)
            .filter(|&a| f.eval(a) == 0)
            .map(|a| FpPoly::new(p, vec![p - a, 1]))
            .collect();
    }
    for _ in 0..256 {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().map_or(true, |k| k == 0) {
            continue;
        }
        let g = f.gcd(&a);
        let cand = if !g.is_one() {
            g
        } else if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                s = s.mul(&s).rem(f);
                t = t.add(&s);
            }
            f.gcd(&t)
        } else {
            // a^((p^d - 1)/2) = (a·a^p·…·a^(p^(d-1)))^((p-1)/2)
            let mut norm = a.clone();
            let mut s = a.clone();
            for _ in 1..d {
                s = s.pow_mod(p, f);
                norm = norm.mul(&s).rem(f);
            }
            let b = norm.pow_mod((p - 1) / 2, f);
            f.gcd(&b.sub(&FpPoly::one(p)))
        };
        let k = cand.deg();
        if k > 0 && k < n {
            let mut out = equal_degree(&cand, d, rng);
            out.extend(equal_degree(&f.divrem(&cand).0, d, rng));
            return out;
        }
    }
    // randomized splitting exhausted; deterministic search is only possible for roots
    if d == 1 {
        return (0..p)
            .filter(|&a| f.eval(a) == 0)
            .map(|a| FpPoly::new(p, vec![p - a, 1]))
            .collect();
    }
    panic!("equal-degree splitting failed for degree {d} over F_{p}");
}

/// Factors `f mod p` into monic irreducibles with multiplicities.
///
/// Factors are sorted by degree, then coefficients; the leading coefficient
/// (a unit) is dropped.
pub fn factor_mod_p(f: &UniPoly, p: u64) -> Result<Vec<(FpPoly, usize)>> {
    if !super::is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let fp = FpPoly::from_unipoly(f, p).ok_or(Error::BadReduction(p))?;
    if fp.degree() != f.degree() {
        return Err(Error::BadReduction(p));
    }
    Ok(factor_fp(&fp))
}

/// Factorization of a nonzero polynomial already reduced mod p.
pub fn factor_fp(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ f.p);
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (d, part) in distinct_degree(&g) {
            for h in equal_degree(&part, d, &mut rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0.c).cmp(&(b.0.deg(), &b.0.c)));
    out
}

/// Number of distinct roots of `f` in 𝔽_{p^n}, read off the factorization.
pub fn count_roots_in_extension(factors: &[(FpPoly, usize)], n: usize) -> u64 {
    factors
        .iter()
        .map(|(g, _)| g.deg())
        .filter(|&d| n % d == 0)
        .map(|d| d as u64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weeks() -> UniPoly {
        UniPoly::from_ints(&[-1, -1, 0, 1])
    }

    fn product(p: u64, fs: &[(FpPoly, usize)]) -> FpPoly {
        let mut acc = FpPoly::one(p);
        for (g, m) in fs {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn weeks_cubic_mod_2_is_irreducible() {
        // brute force: no root in F_2 means irreducible for a cubic
        let f2 = FpPoly::from_unipoly(&weeks(), 2).unwrap();
        assert!((0..2).all(|a| f2.eval(a) != 0));
        let fs = factor_mod_p(&weeks(), 2).unwrap();
        assert_eq!(fs, vec![(FpPoly::from_i64(2, &[1, 1, 0, 1]), 1)]);
    }

    #[test]
    fn weeks_cubic_mod_5() {
        let f5 = FpPoly::from_unipoly(&weeks(), 5).unwrap();
        let roots: Vec<u64> = (0..5).filter(|&a| f5.eval(a) == 0).collect();
        assert_eq!(roots, vec![2]);
        let fs = factor_mod_p(&weeks(), 5).unwrap();
        assert_eq!(
            fs,
            vec![
                (FpPoly::from_i64(5, &[-2, 1]), 1),
                (FpPoly::from_i64(5, &[3, 2, 1]), 1)
            ]
        );
    }

    #[test]
    fn weeks_cubic_mod_23_has_repeated_factor() {
        let f = FpPoly::from_unipoly(&weeks(), 23).unwrap();
        assert!(f.gcd(&f.derivative()).deg() > 0);
        let fs = factor_mod_p(&weeks(), 23).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().any(|(_, m)| *m == 2));
        assert_eq!(product(23, &fs), f.monic());
    }

    #[test]
    fn bad_reduction_detected() {
        let f = UniPoly::from_ints(&[1, 0, 3]);
        assert_eq!(factor_mod_p(&f, 3), Err(Error::BadReduction(3)));
    }

    #[test]
    fn inseparable_power_mod_p() {
        // (T^2 + 1)^3 · T^3 mod 3 has derivative zero pieces
        let p = 3;
        let g = FpPoly::from_i64(p, &[1, 0, 1]);
        let f = g.mul(&g).mul(&g).mul(&FpPoly::from_i64(p, &[0, 0, 0, 1]));
        let fs = factor_fp(&f);
        assert_eq!(product(p, &fs), f.monic());
        assert!(fs.iter().all(|(h, _)| h.is_irreducible()));
    }

    #[test]
    fn large_prime_randomized_split() {
        let p = 1_000_000_007;
        let f = FpPoly::from_i64(p, &[-1, -1, 0, 1]);
        let fs = factor_fp(&f);
        assert_eq!(product(p, &fs), f);
        assert!(fs.iter().all(|(h, _)| h.is_irreducible()));
    }
}
