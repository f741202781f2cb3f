//! Sparse multivariate polynomials over ℚ with a small fixed variable count.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{parse_rat, Rat};
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 6;

/// Dense exponent vector; slots beyond the ring's variable count stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize, e: u16) -> Self {
        let mut m = [0; MAX_VARS];
        m[i] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            m[i] = self.0[i] + o.0[i];
        }
        Monomial(m)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`; caller guarantees divisibility.
    pub fn quotient(&self, o: &Monomial) -> Monomial {
        let mut m = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            m[i] = o.0[i] - self.0[i];
        }
        Monomial(m)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut m = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            m[i] = self.0[i].max(o.0[i]);
        }
        Monomial(m)
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut m = [0; MAX_VARS];
        for i in 0..MAX_VARS {
            m[i] = self.0[i].min(o.0[i]);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// The variable index if this is a pure power `v^e`, e ≥ 1.
    pub fn pure_power(&self) -> Option<(usize, u16)> {
        let nz: Vec<usize> = (0..MAX_VARS).filter(|&i| self.0[i] > 0).collect();
        if nz.len() == 1 {
            Some((nz[0], self.0[nz[0]]))
        } else {
            None
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

/// Polynomial in named variables with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        assert!(vars.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        MultiPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: Rat) -> Self {
        let mut p = self.zero_like();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(), c);
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::var(i, 1), Rat::one());
        p
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree() as i64).max().unwrap_or(-1)
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut p = self.zero_like();
        if c.is_zero() {
            return p;
        }
        p.terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        p
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let mut p = self.zero_like();
        p.terms = self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect();
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.constant_like(Rat::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => *m,
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        let mut p = self.zero_like();
        p.terms = self.terms.iter().map(|(k, a)| (m.quotient(k), a.clone())).collect();
        p
    }

    /// Generic evaluation into any commutative ring given by closures.
    pub fn eval_with<T: Clone>(
        &self,
        vals: &[T],
        one: T,
        from_rat: impl Fn(&Rat) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        let n = self.nvars();
        let mut powers: Vec<Vec<T>> = Vec::with_capacity(n);
        for i in 0..n {
            let d = self.degree_in(i) as usize;
            let mut v = Vec::with_capacity(d + 1);
            v.push(one.clone());
            for k in 1..=d {
                let next = mul(&v[k - 1], &vals[i]);
                v.push(next);
            }
            powers.push(v);
        }
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut t = from_rat(c);
            for i in 0..n {
                if m.0[i] > 0 {
                    t = mul(&t, &powers[i][m.0[i] as usize]);
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => add(&a, &t),
            });
        }
        acc.unwrap_or_else(|| from_rat(&Rat::zero()))
    }

    pub fn eval(&self, vals: &[Rat]) -> Rat {
        self.eval_with(vals, Rat::one(), |c| c.clone(), |a, b| a + b, |a, b| a * b)
    }

    /// Reinterprets in a different variable list, mapping variable `i` to `map[i]`.
    pub fn rename(&self, vars: &[&str], map: &[usize]) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in &self.terms {
            let mut e = [0u16; MAX_VARS];
            for (i, &t) in map.iter().enumerate() {
                e[t] += m.0[i];
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Parses expressions such as `"-2 + z + 4*z^2 - 1/3*x*y^2"`.
    pub fn parse(s: &str, vars: &[&str]) -> Result<Self> {
        let mut out = Self::zero(vars);
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
        }
        let bytes: Vec<char> = cleaned.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let start = i;
            let mut sign = Rat::one();
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            }
            let mut j = i;
            while j < bytes.len() && bytes[j] != '+' && bytes[j] != '-' {
                j += 1;
            }
            let term: String = bytes[i..j].iter().collect();
            if term.is_empty() {
                return Err(Error::Parse { pos: start, msg: "empty term".into() });
            }
            let mut coeff = sign;
            let mut mono = Monomial::one();
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u16>().map_err(|_| Error::Parse {
                            pos: start,
                            msg: format!("bad exponent in {factor}"),
                        })?,
                    ),
                    None => (factor, 1),
                };
                if let Some(k) = vars.iter().position(|v| *v == base) {
                    mono.0[k] += exp;
                } else if let Some(r) = parse_rat(base) {
                    coeff *= num_traits::pow(r, exp as usize);
                } else {
                    return Err(Error::Parse { pos: start, msg: format!("unknown symbol {base}") });
                }
            }
            out.add_term(mono, coeff);
            i = j;
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut parts = Vec::new();
            if !a.is_one() || m.is_one() {
                parts.push(a.to_string());
            }
            for (i, v) in self.vars.iter().enumerate() {
                match m.0[i] {
                    0 => {}
                    1 => parts.push(v.clone()),
                    e => parts.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, -c);
        }
        p
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut p = self.zero_like();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rint;
    use proptest::prelude::*;

    const V: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn parse_and_print() {
        let f = MultiPoly::parse("-z^4 - 4 - x*y*z + z^3 + y^2 + x^2 + 4*z^2 - 2*z", &V).unwrap();
        assert_eq!(f.total_degree(), 4);
        assert_eq!(f.eval(&[rint(1), rint(1), rint(1)]), rint(-1));
        let g = MultiPoly::parse(&f.to_string(), &V).unwrap();
        assert_eq!(f, g);
        assert!(MultiPoly::parse("x + w", &V).is_err());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(((0u16..3, 0u16..3, 0u16..3), -5i64..6), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(
                &V,
                ts.into_iter().map(|((a, b, c), k)| {
                    let mut m = [0u16; MAX_VARS];
                    m[0] = a;
                    m[1] = b;
                    m[2] = c;
                    (Monomial(m), rint(k))
                }),
            )
        })
    }

    proptest! {
        #[test]
        fn product_evaluates_to_product_of_evaluations(
            f in small_poly(), g in small_poly(),
            pt in proptest::collection::vec((-7i64..8, 1i64..5), 3)
        ) {
            let vals: Vec<Rat> = pt.iter().map(|&(n, d)| crate::arith::rat(n, d)).collect();
            prop_assert_eq!((&f * &g).eval(&vals), f.eval(&vals) * g.eval(&vals));
            prop_assert_eq!((&f + &g).eval(&vals), f.eval(&vals) + g.eval(&vals));
            prop_assert!((&f - &f).is_zero());
        }
    }
}
