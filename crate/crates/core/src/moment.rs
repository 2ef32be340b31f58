//! Exact exponential moments of polynomials.
//!
//! With `∫_0^∞ e^{-cx} x^k dx = k! / c^{k+1}`, every integral of the form
//! `∫_0^∞ e^{-cx} p(x) dx` or `∫_0^∞ e^{-cx} p(x) dx / x` (the latter only
//! when `p(0) = 0`) is a finite rational sum.

use num::{One, Signed, Zero};

use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};
use crate::rational::Rational;

fn check_rate(c: &Rational) -> Result<()> {
    if !c.is_positive() {
        return Err(Error::Divergent(format!("exponential rate must be positive, got {c}")));
    }
    Ok(())
}

/// `∫_0^∞ e^{-cx} p(x) dx = sum_k a_k k! / c^{k+1}`.
pub fn exp_moment<T: Ring>(p: &Poly<T>, c: &Rational) -> Result<Rational> {
    check_rate(c)?;
    let inv_c = Rational::one() / c;
    let mut pow = inv_c.clone();
    let mut acc = Rational::zero();
    for (k, a) in p.coeffs().iter().enumerate() {
        if !a.is_zero() {
            acc += a.to_rational() * Rational::from_integer(factorial(k)) * &pow;
        }
        pow *= &inv_c;
    }
    Ok(acc)
}

/// `∫_0^∞ e^{-cx} p(x) dx / x = sum_{k>=1} a_k (k-1)! / c^k`.
///
/// A nonzero constant term makes the integral diverge at the origin and is
/// rejected.
pub fn exp_moment_div_x<T: Ring>(p: &Poly<T>, c: &Rational) -> Result<Rational> {
    check_rate(c)?;
    if !p.coeff(0).is_zero() {
        return Err(Error::Divergent("integrand p(x)/x with p(0) != 0".into()));
    }
    let inv_c = Rational::one() / c;
    let mut pow = inv_c.clone();
    let mut acc = Rational::zero();
    for (k, a) in p.coeffs().iter().enumerate().skip(1) {
        if !a.is_zero() {
            acc += a.to_rational() * Rational::from_integer(factorial(k - 1)) * &pow;
        }
        pow *= &inv_c;
    }
    Ok(acc)
}
