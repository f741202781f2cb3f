//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{lcm_denominators, Rat};
use crate::error::{Error, Result};

/// Univariate polynomial over ℚ; `coeffs[i]` is the coefficient of `T^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Builds from integer coefficients in ascending degree.
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rat::from_integer(v.into())).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|v| Rat::from_integer(v.clone())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The indeterminate `T`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c·T^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg 0 = −1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rat::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `self(g(T))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    pub fn divides(&self, f: &UniPoly) -> bool {
        f.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(other);
        (self * other).divrem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Monic squarefree part `f / gcd(f, f')`.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Splits into `(content, primitive integer polynomial)` with positive
    /// leading coefficient, so that `self = content · prim`.
    pub fn primitive_integer(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), Vec::new());
        }
        let l = lcm_denominators(self.coeffs.iter());
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
        (Rat::new(g, l), prim)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Resultant via the Euclidean remainder sequence over ℚ.
    pub fn resultant(&self, other: &UniPoly) -> Rat {
        if self.is_zero() || other.is_zero() {
            return Rat::zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = Rat::one();
        loop {
            let m = a.deg();
            let n = b.deg();
            if n == 0 {
                return acc * pow_rat(&b.lc(), m as u32);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Rat::zero();
            }
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc *= pow_rat(&b.lc(), (m - r.deg()) as u32);
            a = b;
            b = r;
        }
    }

    /// `(−1)^{n(n−1)/2} · Res(f, f′) / lc(f)`.
    pub fn discriminant(&self) -> Result<Rat> {
        let n = match self.degree() {
            None => return Err(Error::Domain("discriminant of zero polynomial".into())),
            Some(0) => return Err(Error::Domain("discriminant of a constant".into())),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(Rat::one());
        }
        let res = self.resultant(&self.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rat::one() } else { Rat::one() };
        Ok(sign * res / self.lc())
    }

    /// Number of real roots and complex-conjugate pairs, from a Sturm sequence.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let n = self
            .degree()
            .ok_or_else(|| Error::Domain("signature of zero polynomial".into()))?;
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let k = seq.len();
            if seq[k - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[k - 2].rem(&seq[k - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        let variations = |signs: Vec<i8>| {
            let nz: Vec<i8> = signs.into_iter().filter(|&s| s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let sgn = |r: &Rat| if r.is_positive() { 1i8 } else if r.is_negative() { -1 } else { 0 };
        let at_pos_inf = variations(seq.iter().map(|p| sgn(&p.lc())).collect());
        let at_neg_inf = variations(
            seq.iter()
                .map(|p| {
                    let s = sgn(&p.lc());
                    if p.deg() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                })
                .collect(),
        );
        let real = at_neg_inf - at_pos_inf;
        Ok((real, (n - real) / 2))
    }

    /// Formats with the given variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 || !a.is_one() {
                s.push_str(&a.to_string());
                if i > 0 {
                    s.push('*');
                }
            }
            s.push_str(&mono);
        }
        s
    }

    /// Coefficients as exact strings, ascending degree.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings(v: &[String]) -> Option<Self> {
        v.iter()
            .map(|s| super::parse_rat(s))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }
}

pub(crate) fn pow_rat(r: &Rat, e: u32) -> Rat {
    num_traits::pow(r.clone(), e as usize)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("T"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rint;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn discriminants_of_trace_fields() {
        assert_eq!(p(&[-1, -1, 0, 1]).discriminant().unwrap(), rint(-23));
        assert_eq!(p(&[-1, 3, 1, -3, 1]).discriminant().unwrap(), rint(-283));
        assert_eq!(p(&[-1, 0, 1]).discriminant().unwrap(), rint(4));
        assert!(UniPoly::zero().discriminant().is_err());
    }

    #[test]
    fn signatures() {
        assert_eq!(p(&[-1, -1, 0, 1]).signature().unwrap(), (1, 1));
        assert_eq!(p(&[1, 0, 1]).signature().unwrap(), (0, 1));
        assert_eq!(p(&[-2, 0, 1]).signature().unwrap(), (2, 0));
        assert_eq!(p(&[4, 0, -2, 0, 1]).signature().unwrap(), (0, 2));
        assert_eq!(p(&[-1, 0, -1, 0, 0, 0, 1]).signature().unwrap(), (2, 2));
        assert_eq!(p(&[1, 2, 1]).signature(), Err(Error::NotSquarefree));
    }

    #[test]
    fn weeks_root_brackets_near_one_point_three() {
        // sign change of T^3 - T - 1 between 13/10 and 133/100 (single real root ~1.3247)
        let f = p(&[-1, -1, 0, 1]);
        let a = f.eval(&crate::arith::rat(13, 10));
        let b = f.eval(&crate::arith::rat(133, 100));
        assert!(a < Rat::zero() && b > Rat::zero());
    }

    #[test]
    fn xgcd_bezout() {
        let f = p(&[-1, -1, 0, 1]);
        let g = p(&[1, 0, -1]);
        let (d, s, t) = f.xgcd(&g);
        assert_eq!(&(&s * &f) + &(&t * &g), d);
        assert!(d.is_constant());
    }

    #[test]
    fn primitive_integer_parts() {
        let f = UniPoly::new(vec![crate::arith::rat(1, 2), rint(0), crate::arith::rat(-3, 4)]);
        let (c, prim) = f.primitive_integer();
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(0), BigInt::from(3)]);
        assert_eq!(UniPoly::from_bigints(&prim).scale(&c), f);
    }
}
