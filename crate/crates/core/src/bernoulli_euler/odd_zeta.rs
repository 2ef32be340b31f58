//! Exact bookkeeping for the odd zeta identities.
//!
//! Every integral here has the form `∫_0^∞ τ^{α-1} / sinh(πτ) dτ` with
//! integer `α`, which equals `(2^α - 1) / (π^α 2^{α-1}) Γ(α) ζ(α)`. For odd
//! `α` this is a rational multiple of the symbol `ζ(α)/π^α`; for even `α` the
//! ratio `ζ(α)/π^α` is itself rational.

use num::{BigInt, One, Zero};
use serde::Serialize;

use super::{bernoulli_number, bernoulli_poly, zeta_even_ratio, ZetaComb, ZetaVariant};
use crate::combinatorics::{binomial, factorial};
use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rational::{int, pow2, sign_pow, Rational};

/// `∫_0^∞ τ^{α-1} / sinh(πτ) dτ` as an exact [`ZetaComb`]: a single odd
/// symbol for odd `α`, a constant for even `α`.
pub fn sinh_moment(alpha: i64) -> Result<ZetaComb> {
    if alpha < 2 {
        return Err(Error::Divergent(format!("∫ τ^(α-1)/sinh(πτ) diverges for α = {alpha}")));
    }
    let coeff = (pow2(alpha) - int(1)) * Rational::from_integer(factorial(alpha as usize - 1)) / pow2(alpha - 1);
    if alpha % 2 == 1 {
        Ok(ZetaComb::symbol(alpha as u64, coeff))
    } else {
        let ratio = zeta_even_ratio(alpha as usize / 2, ZetaVariant::Bernoulli)?;
        Ok(ZetaComb::constant(coeff * ratio))
    }
}

/// The real polynomial `R_k(s)` with `iτ B_{2k+1}((1 - iτ)/2) = R_k(τ²)`.
pub fn odd_bernoulli_tau_poly(k: usize) -> Result<RatPoly> {
    // b_m = coefficient of y^m in B_{2k+1}(1/2 + y)
    let shifted = bernoulli_poly(2 * k + 1).taylor_shift(&Rational::new(BigInt::one(), BigInt::from(2)));
    // y = -iτ/2, so iτ y^m = i (-i)^m τ^{m+1} / 2^m. Track real and imaginary
    // parts of each τ power.
    let deg = shifted.degree().unwrap_or(0) + 2;
    let mut re = vec![Rational::zero(); deg + 1];
    let mut im = vec![Rational::zero(); deg + 1];
    for (m, b) in shifted.coeffs().iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let scaled = b * pow2(-(m as i64));
        // i * (-i)^m cycles through i, 1, -i, -1.
        match m % 4 {
            0 => im[m + 1] += scaled,
            1 => re[m + 1] += scaled,
            2 => im[m + 1] -= scaled,
            _ => re[m + 1] -= scaled,
        }
    }
    if let Some(m) = im.iter().position(|c| !c.is_zero()) {
        return Err(Error::Inconsistency(format!("R_{k} has an imaginary τ^{m} coefficient")));
    }
    if let Some(m) = re.iter().enumerate().position(|(j, c)| j % 2 == 1 && !c.is_zero()) {
        return Err(Error::Inconsistency(format!("R_{k} has an odd power τ^{m}")));
    }
    Ok(RatPoly::new(re.into_iter().step_by(2).collect()))
}

/// `∫_0^∞ R(τ²) / sinh(πτ) dτ`, integrated term by term.
fn integrate_against_sinh(r: &RatPoly) -> Result<ZetaComb> {
    let mut acc = ZetaComb::zero();
    for (j, c) in r.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = acc.add(&sinh_moment(2 * j as i64 + 1)?.scale(c));
    }
    Ok(acc)
}

fn inv_factorial(n: usize) -> Rational {
    Rational::new(BigInt::one(), factorial(n))
}

/// `sum_{k=0}^{d} (2^{2k} - 2) B_{2k} / ((2k)! (2(d-k)+1)!)`
pub fn zeta_bracket(d: usize) -> Rational {
    (0..=d)
        .map(|k| (pow2(2 * k as i64) - int(2)) * bernoulli_number(2 * k) * inv_factorial(2 * k) * inv_factorial(2 * (d - k) + 1))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddZetaReport {
    pub n: usize,
    /// Weighted sum of the Bernoulli-polynomial integrals.
    pub lhs: ZetaComb,
    /// `(-1)^n (n+1) (2 - 2^{-2(n+1)}) ζ(2n+3)/π^{2n+3}`
    pub rhs: ZetaComb,
    pub identity_holds: bool,
    /// Each weighted integral agrees with its closed form in Bernoulli numbers.
    pub closed_forms_hold: bool,
    /// The regrouped double sum, bracket by bracket, equals `rhs`.
    pub bracket_form_holds: bool,
    /// Brackets multiplying `ζ(2m+3)` for `m < n`.
    #[serde(serialize_with = "ser_brackets")]
    pub lower_brackets: Vec<Rational>,
    pub lower_brackets_vanish: bool,
}

fn ser_brackets<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

impl OddZetaReport {
    pub fn all_ok(&self) -> bool {
        self.identity_holds && self.closed_forms_hold && self.bracket_form_holds && self.lower_brackets_vanish
    }
}

fn odd_symbol_weight(m: usize) -> Rational {
    // (-1)^{m+1} (m+1) (2 - 2^{-2(m+1)})
    int(sign_pow(m as i64 + 1)) * int(m as i64 + 1) * (int(2) - pow2(-2 * (m as i64 + 1)))
}

pub fn verify_odd_zeta_identity(n: usize) -> Result<OddZetaReport> {
    let mut lhs = ZetaComb::zero();
    let mut closed_forms_hold = true;
    for k in 0..=n {
        let integral = integrate_against_sinh(&odd_bernoulli_tau_poly(k)?)?;
        let weighted = integral.scale(&pow2(2 * k as i64));
        // (2k+1)! sum_m (-1)^{m+1}(m+1)(2^{2(k-m)}-2)(2^{2(m+2)}-2) B_{2(k-m)}/(2(k-m))! ζ(2m+3)/(2π)^{2m+3}
        let closed = (0..=k).fold(ZetaComb::zero(), |acc, m| {
            let c = Rational::from_integer(factorial(2 * k + 1))
                * int(sign_pow(m as i64 + 1) * (m as i64 + 1))
                * (pow2(2 * (k - m) as i64) - int(2))
                * (pow2(2 * (m as i64 + 2)) - int(2))
                * bernoulli_number(2 * (k - m))
                * inv_factorial(2 * (k - m))
                * pow2(-(2 * m as i64 + 3));
            acc.add(&ZetaComb::symbol(2 * m as u64 + 3, c))
        });
        closed_forms_hold &= weighted == closed;
        let w = pow2(2 * k as i64) * inv_factorial(2 * k + 1) * inv_factorial(2 * (n - k) + 1);
        lhs = lhs.add(&integral.scale(&w));
    }
    let rhs = ZetaComb::symbol(
        2 * n as u64 + 3,
        int(sign_pow(n as i64) * (n as i64 + 1)) * (int(2) - pow2(-2 * (n as i64 + 1))),
    );
    let bracket_form = (0..=n).fold(ZetaComb::zero(), |acc, m| {
        acc.add(&ZetaComb::symbol(2 * m as u64 + 3, odd_symbol_weight(m) * zeta_bracket(n - m)))
    });
    let lower_brackets: Vec<Rational> = (0..n).map(|m| zeta_bracket(n - m)).collect();
    Ok(OddZetaReport {
        n,
        identity_holds: lhs == rhs,
        closed_forms_hold,
        bracket_form_holds: bracket_form == rhs,
        lower_brackets_vanish: lower_brackets.iter().all(Zero::is_zero),
        lower_brackets,
        lhs,
        rhs,
    })
}

/// `sum_{k=0}^{n} C(2n+1,2k) (2^{2k-1} - 1) B_{2k} = 0`.
pub fn theorem4_sum(n: usize) -> Rational {
    (0..=n)
        .map(|k| {
            Rational::from_integer(binomial(2 * n + 1, 2 * k as i64))
                * (pow2(2 * k as i64 - 1) - int(1))
                * bernoulli_number(2 * k)
        })
        .sum()
}

pub fn verify_theorem4(n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("verify_theorem4 needs n >= 1".into()));
    }
    Ok(theorem4_sum(n).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn sinh_moments() {
        assert_eq!(sinh_moment(3).unwrap(), ZetaComb::symbol(3, rat(7, 2)));
        assert_eq!(sinh_moment(2).unwrap(), ZetaComb::constant(rat(1, 4)));
        // (31 / 16) * 4! = 93/2
        assert_eq!(sinh_moment(5).unwrap(), ZetaComb::symbol(5, rat(93, 2)));
        assert!(matches!(sinh_moment(1), Err(Error::Divergent(_))));
    }

    #[test]
    fn tau_polys() {
        assert_eq!(odd_bernoulli_tau_poly(0).unwrap(), crate::poly::rat_poly(&[(0, 1), (1, 2)]));
        // B_3(1/2 + y) = y^3 - y/4  =>  R_1(s) = -(s + s^2)/8
        assert_eq!(odd_bernoulli_tau_poly(1).unwrap(), crate::poly::rat_poly(&[(0, 1), (-1, 8), (-1, 8)]));
        for k in 0..8 {
            assert!(odd_bernoulli_tau_poly(k).unwrap().coeff(0).is_zero());
        }
    }

    #[test]
    fn odd_zeta_small_cases() {
        let r0 = verify_odd_zeta_identity(0).unwrap();
        assert_eq!(r0.rhs, ZetaComb::symbol(3, rat(7, 4)));
        assert!(r0.all_ok(), "{r0:?}");
        let r1 = verify_odd_zeta_identity(1).unwrap();
        assert_eq!(r1.lower_brackets, vec![int(0)]);
        assert!(r1.all_ok(), "{r1:?}");
        assert_eq!(zeta_bracket(1), int(0));
    }

    #[test]
    fn theorem4_cases() {
        assert_eq!(theorem4_sum(1), int(0));
        for n in [1, 2, 10] {
            assert!(verify_theorem4(n).unwrap());
        }
        assert!(verify_theorem4(0).is_err());
    }
}
