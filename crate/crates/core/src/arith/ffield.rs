//! Finite fields 𝔽_{p^n} as 𝔽_p[T]/(m) and a log-table form used for
//! exhaustive point counting.

use std::sync::Arc;

use super::fp::FpPoly;
use crate::error::{Error, Result};

/// `𝔽_p[T]/(modulus)` with `modulus` monic irreducible of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    pub p: u64,
    pub n: usize,
    pub modulus: FpPoly,
}

impl FiniteField {
    /// Picks the first monic irreducible of degree `n` in lexicographic order.
    pub fn new(p: u64, n: usize) -> Result<Arc<Self>> {
        if !super::is_prime(p) || n == 0 {
            return Err(Error::Domain(format!("no field of order {p}^{n}")));
        }
        if n == 1 {
            return Ok(Arc::new(FiniteField { p, n, modulus: FpPoly::x(p) }));
        }
        let total = (p as u128).pow(n as u32);
        for idx in 0..total {
            let mut c = digits(idx, p, n);
            c.push(1);
            let m = FpPoly::new(p, c);
            if m.is_irreducible() {
                return Ok(Arc::new(FiniteField { p, n, modulus: m }));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn with_modulus(modulus: FpPoly) -> Result<Arc<Self>> {
        if !modulus.is_irreducible() {
            return Err(Error::Domain("modulus is not irreducible".into()));
        }
        let m = modulus.monic();
        Ok(Arc::new(FiniteField { p: m.p, n: m.deg(), modulus: m }))
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.n as u32)
    }
}

fn digits(mut idx: u128, p: u64, n: usize) -> Vec<u64> {
    let mut c = Vec::with_capacity(n);
    for _ in 0..n {
        c.push((idx % p as u128) as u64);
        idx /= p as u128;
    }
    c
}

/// Element of a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFElem {
    pub field: Arc<FiniteField>,
    pub value: FpPoly,
}

impl FFElem {
    pub fn new(field: &Arc<FiniteField>, value: FpPoly) -> Self {
        let value = if field.n == 1 {
            FpPoly::new(field.p, vec![value.coeff(0)])
        } else {
            value.rem(&field.modulus)
        };
        FFElem { field: field.clone(), value }
    }

    pub fn from_u64(field: &Arc<FiniteField>, c: u64) -> Self {
        Self::new(field, FpPoly::new(field.p, vec![c]))
    }

    /// Element whose coefficient vector is the base-p expansion of `idx`.
    pub fn from_index(field: &Arc<FiniteField>, idx: u128) -> Self {
        Self::new(field, FpPoly::new(field.p, digits(idx, field.p, field.n)))
    }

    pub fn index(&self) -> u128 {
        let p = self.field.p as u128;
        self.value.coeffs().iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
    }

    pub fn zero(field: &Arc<FiniteField>) -> Self {
        Self::from_u64(field, 0)
    }

    pub fn one(field: &Arc<FiniteField>) -> Self {
        Self::from_u64(field, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        FFElem { field: self.field.clone(), value: self.value.add(&o.value) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FFElem { field: self.field.clone(), value: self.value.sub(&o.value) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.field, self.value.mul(&o.value))
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field.order() - 2))
    }

    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p as u128)
    }
}

/// 𝔽_q with elements encoded as discrete logarithms (Zech representation).
///
/// Element codes are `0..q-1` for `g^k` and `q-1` for zero.
pub struct GfTable {
    pub p: u64,
    pub q: usize,
    zech: Vec<u32>,
    log: Vec<u32>,
    /// code of each prime-field constant 0..p
    consts: Vec<u32>,
}

impl GfTable {
    pub const MAX_ORDER: u128 = 1 << 22;

    pub fn new(field: &Arc<FiniteField>) -> Result<Self> {
        let q128 = field.order();
        if q128 > Self::MAX_ORDER {
            return Err(Error::ResourceBudget(format!("field of order {q128} too large for tables")));
        }
        let q = q128 as usize;
        let p = field.p;
        let zero = (q - 1) as u32;
        if q == 2 {
            return Ok(GfTable { p, q, zech: vec![zero], log: vec![zero, 0], consts: vec![zero, 0] });
        }
        // log table via a primitive element
        let mut log = vec![u32::MAX; q];
        let order = (q - 1) as u128;
        let mut gen = None;
        for idx in 2..q as u128 {
            let g = FFElem::from_index(field, idx);
            if is_primitive(&g, order) {
                gen = Some(g);
                break;
            }
        }
        let g = gen.unwrap_or_else(|| FFElem::from_index(field, 1));
        let mut cur = FFElem::one(field);
        for k in 0..q - 1 {
            log[cur.index() as usize] = k as u32;
            cur = cur.mul(&g);
        }
        log[0] = zero;
        // zech[k] = log(1 + g^k)
        let mut zech = vec![zero; q - 1];
        let mut cur = FFElem::one(field);
        let one = FFElem::one(field);
        for z in zech.iter_mut() {
            *z = log[cur.add(&one).index() as usize];
            cur = cur.mul(&g);
        }
        let consts = (0..p)
            .map(|c| log[FFElem::from_u64(field, c).index() as usize])
            .collect();
        Ok(GfTable { p, q, zech, log, consts })
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        (self.q - 1) as u32
    }

    #[inline]
    pub fn constant(&self, c: u64) -> u32 {
        self.consts[(c % self.p) as usize]
    }

    /// Code of the element with base-p coefficient index `idx`.
    pub fn code_of_index(&self, idx: usize) -> u32 {
        self.log[idx]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let z = self.zero();
        if a == z || b == z {
            return z;
        }
        let s = a as u64 + b as u64;
        (s % (self.q as u64 - 1)) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let z = self.zero();
        if a == z {
            return b;
        }
        if b == z {
            return a;
        }
        let m = (self.q - 1) as u32;
        // g^a + g^b = g^a (1 + g^(b-a))
        let d = if b >= a { b - a } else { b + m - a };
        let zz = self.zech[d as usize];
        if zz == z {
            return z;
        }
        ((a as u64 + zz as u64) % m as u64) as u32
    }

    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if e == 0 {
            return 0;
        }
        let z = self.zero();
        if a == z {
            return z;
        }
        ((a as u64 * e as u64) % (self.q as u64 - 1)) as u32
    }

    /// All element codes, zero first.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        let z = self.zero();
        std::iter::once(z).chain(0..z)
    }
}

fn is_primitive(g: &FFElem, order: u128) -> bool {
    if g.is_zero() {
        return false;
    }
    let mut m = order;
    let mut f = 2u128;
    let mut factors = Vec::new();
    while f * f <= m {
        if m % f == 0 {
            factors.push(f);
            while m % f == 0 {
                m /= f;
            }
        }
        f += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    factors.iter().all(|&r| !g.pow(order / r).value.is_one())
}
