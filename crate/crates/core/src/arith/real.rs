//! Fixed-point reals with 256 fractional bits (about 77 decimal digits).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rat;

pub const FRAC_BITS: usize = 256;

/// `value / 2^FRAC_BITS`, truncated toward −∞ on every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Real(BigInt);

impl Real {
    pub fn zero() -> Self {
        Real(BigInt::zero())
    }

    pub fn one() -> Self {
        Real(BigInt::from(1) << FRAC_BITS)
    }

    pub fn from_int(n: i64) -> Self {
        Real(BigInt::from(n) << FRAC_BITS)
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Real(n << FRAC_BITS)
    }

    pub fn from_rat(r: &Rat) -> Self {
        Real((r.numer() << FRAC_BITS) / r.denom())
    }

    /// Exact decimal parse (`"0.9427073628"`, `"-3"`, `"1e-3"` not supported).
    pub fn parse_decimal(s: &str) -> Option<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        let digits = format!("{int}{frac}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Real::from_rat(&Rat::new(if neg { -n } else { n }, d));
        Some(r)
    }

    /// Exact conversion of a finite double; non-finite input gives zero.
    pub fn from_f64(x: f64) -> Self {
        if !x.is_finite() || x == 0.0 {
            return Self::zero();
        }
        // x = ±mantissa · 2^exp with a 53-bit integer mantissa
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        let m = BigInt::from(mantissa);
        let shift = exp + FRAC_BITS as i64;
        let v = if shift >= 0 { m << shift as usize } else { m >> (-shift) as usize };
        Real(if x < 0.0 { -v } else { v })
    }

    pub fn to_f64(&self) -> f64 {
        // 2^-FRAC_BITS is a normal double, so the scaling is exact
        self.0.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(FRAC_BITS as i32))
    }

    pub fn raw(&self) -> &BigInt {
        &self.0
    }

    pub fn from_raw(v: BigInt) -> Self {
        Real(v)
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Nearest integer, halves rounded up.
    pub fn round(&self) -> BigInt {
        let half = BigInt::one() << (FRAC_BITS - 1);
        (&self.0 + half) >> FRAC_BITS
    }

    pub fn recip(&self) -> Self {
        Real::one() / self.clone()
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Real::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.0.is_negative(), "sqrt of negative real");
        Real((&self.0 << FRAC_BITS).sqrt())
    }

    /// π by Machin's formula.
    pub fn pi() -> Self {
        let a = atan_inv(5);
        let b = atan_inv(239);
        &(&a * &Real::from_int(16)) - &(&b * &Real::from_int(4))
    }

    /// Decimal string with `digits` fractional digits, rounded to nearest.
    pub fn to_decimal(&self, digits: usize) -> String {
        let a = self.0.abs();
        let half = BigInt::one() << (FRAC_BITS - 1);
        let scaled = (a * num_traits::pow(BigInt::from(10), digits) + half) >> FRAC_BITS;
        let neg = self.0.is_negative() && !scaled.is_zero();
        let s = scaled.to_string();
        let s = if s.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - s.len()), s) } else { s };
        let (i, f) = s.split_at(s.len() - digits);
        format!("{}{}.{}", if neg { "-" } else { "" }, i, f)
    }

    pub fn cmp_abs(&self, o: &Real) -> Ordering {
        self.0.abs().cmp(&o.0.abs())
    }
}

fn atan_inv(x: i64) -> Real {
    // atan(1/x) = Σ (−1)^k / ((2k+1) x^(2k+1))
    let one = BigInt::from(1) << (FRAC_BITS + 16);
    let x2 = BigInt::from(x * x);
    let mut term = &one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    Real(sum >> 16)
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(20)))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(30))
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, o: &Real) -> Real {
        Real(&self.0 + &o.0)
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, o: &Real) -> Real {
        Real(&self.0 - &o.0)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, o: &Real) -> Real {
        Real((&self.0 * &o.0) >> FRAC_BITS)
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, o: &Real) -> Real {
        assert!(!o.0.is_zero(), "division by zero");
        Real((&self.0 << FRAC_BITS) / &o.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-&self.0)
    }
}

macro_rules! owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
    };
}
owned!(Add, add);
owned!(Sub, sub);
owned!(Mul, mul);
owned!(Div, div);
