//! Computations in ℚ[T]/(h) on bare polynomials: products, minimal
//! polynomials, change of primitive element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::linalg::{krylov_min_poly, solve_columns};
use super::{Rat, UniPoly};

pub fn mul_mod(a: &UniPoly, b: &UniPoly, h: &UniPoly) -> UniPoly {
    (a * b).rem(h)
}

fn to_vec(a: &UniPoly, n: usize) -> Vec<Rat> {
    (0..n).map(|i| a.coeff(i)).collect()
}

/// Minimal polynomial over ℚ of `e` in ℚ[T]/(h); `h` need not be irreducible.
pub fn min_poly_mod(e: &UniPoly, h: &UniPoly) -> UniPoly {
    let n = h.degree().expect("nonzero modulus");
    let e = e.rem(h);
    let (p, _) = krylov_min_poly(to_vec(&UniPoly::one(), n), |v| {
        to_vec(&mul_mod(&UniPoly::new(v.to_vec()), &e, h), n)
    });
    p
}

/// For `e` generating ℚ[T]/(h) (h irreducible): returns `(g, q)` with
/// `g = minpoly(e)` and `T ≡ q(e) mod h`.
pub fn change_generator(e: &UniPoly, h: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    let n = h.degree()?;
    let e = e.rem(h);
    let (g, powers) = krylov_min_poly(to_vec(&UniPoly::one(), n), |v| {
        to_vec(&mul_mod(&UniPoly::new(v.to_vec()), &e, h), n)
    });
    if g.degree() != Some(n) {
        return None;
    }
    let q = solve_columns(&powers, &to_vec(&UniPoly::x().rem(h), n))?;
    Some((g, UniPoly::new(q)))
}

/// Rewrites `a(T) mod h` in terms of a new generator, given `T ≡ q(s)` modulo `g(s)`.
pub fn substitute(a: &UniPoly, q: &UniPoly, g: &UniPoly) -> UniPoly {
    // Horner in ℚ[s]/(g)
    let mut acc = UniPoly::zero();
    for c in a.coeffs().iter().rev() {
        acc = &mul_mod(&acc, q, g) + &UniPoly::constant(c.clone());
    }
    acc.rem(g)
}

/// Smallest positive integer `d` with `d^n · h(T/d)` integral, for monic `h`.
/// Returns that monic integral polynomial and `d` (new generator is `d·T`).
pub fn make_integral(h: &UniPoly) -> (UniPoly, BigInt) {
    let h = h.monic();
    let n = h.degree().expect("nonzero");
    let mut d = BigInt::one();
    // need d^(n−i) · c_i integral for every i
    for i in 0..n {
        let c = h.coeff(i);
        if c.is_zero() {
            continue;
        }
        let k = (n - i) as u32;
        let den = c.denom().clone();
        // smallest e with den | e^k: product over primes of p^ceil(v/k); use a simple search on d
        while !(num_traits::pow(d.clone(), k as usize) % &den).is_zero() {
            d = d.lcm(&radical_step(&den, &d, k));
        }
    }
    let dr = Rat::from(d.clone());
    let coeffs: Vec<Rat> = (0..=n).map(|i| h.coeff(i) * num_traits::pow(dr.clone(), n - i)).collect();
    (UniPoly::new(coeffs), d)
}

/// Grows `d` towards the least integer whose k-th power is divisible by `den`.
fn radical_step(den: &BigInt, d: &BigInt, k: u32) -> BigInt {
    let missing = den / den.gcd(&num_traits::pow(d.clone(), k as usize));
    d * smallest_factor(&missing)
}

fn smallest_factor(n: &BigInt) -> BigInt {
    let mut f = BigInt::from(2);
    while &f * &f <= *n {
        if (n % &f).is_zero() {
            return f;
        }
        f += 1;
    }
    n.clone()
}
