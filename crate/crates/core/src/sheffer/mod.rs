//! The polynomial sequences `p_n` and `q_n`.
//!
//! `p_n` has the exponential generating function
//! `exp(-x (cosh t - 1)) = sum_n p_n(x) t^(2n) / (2n)!` and `q_n` the one of
//! the same series divided by `cosh t`. Each sequence can be produced by three
//! independent routes; the differential recurrence is the reference route for
//! `p_n` and the derivative sum the reference route for `q_n`.

pub mod pde;

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli_euler::euler_number;
use crate::biseries::TruncatedBiseries;
use crate::combinatorics::{binomial, factorial};
use crate::error::{invalid, Error, Result};
use crate::poly::{IntPoly, Poly, RatPoly};
use crate::rational::{pow2, to_integer, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sequence {
    P,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceRoute {
    /// `p_{n+1} = x^2 p_n'' + x(1-2x) p_n' - x p_n`
    DiffRecurrence,
    /// `p_{n+1} = -x sum_{k<=n} C(2n+1,2k) p_k`
    SumRecurrence,
    /// `p_n = sum_k a_{n,k} x^k` with [`coeff_a`].
    ExplicitCoeffs,
    /// `q_n = sum_{k<=n} p_n^{(k)}`
    DerivativeSum,
    /// `q_n = sum_k E_{2(n-k)} C(2n,2k) p_k`
    EulerConvolution,
    /// `q_n = p_n - sum_{k<n} C(2n,2k) q_k`
    InverseRecurrence,
}

impl SequenceRoute {
    pub const P_ROUTES: [SequenceRoute; 3] =
        [SequenceRoute::DiffRecurrence, SequenceRoute::SumRecurrence, SequenceRoute::ExplicitCoeffs];
    pub const Q_ROUTES: [SequenceRoute; 3] =
        [SequenceRoute::DerivativeSum, SequenceRoute::EulerConvolution, SequenceRoute::InverseRecurrence];

    pub fn sequence(self) -> Sequence {
        if Self::P_ROUTES.contains(&self) {
            Sequence::P
        } else {
            Sequence::Q
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceRoute::DiffRecurrence => "diff_recurrence",
            SequenceRoute::SumRecurrence => "sum_recurrence",
            SequenceRoute::ExplicitCoeffs => "explicit_coeffs",
            SequenceRoute::DerivativeSum => "derivative_sum",
            SequenceRoute::EulerConvolution => "euler_convolution",
            SequenceRoute::InverseRecurrence => "inverse_recurrence",
        }
    }

    pub fn default_for(seq: Sequence) -> Self {
        match seq {
            Sequence::P => SequenceRoute::DiffRecurrence,
            Sequence::Q => SequenceRoute::DerivativeSum,
        }
    }

    pub fn routes_for(seq: Sequence) -> [SequenceRoute; 3] {
        match seq {
            Sequence::P => Self::P_ROUTES,
            Sequence::Q => Self::Q_ROUTES,
        }
    }
}

impl fmt::Display for SequenceRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::P_ROUTES
            .iter()
            .chain(Self::Q_ROUTES.iter())
            .copied()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| invalid(format!("unknown route `{s}`")))
    }
}

fn expect_sequence(route: SequenceRoute, seq: Sequence) -> Result<()> {
    if route.sequence() != seq {
        return Err(invalid(format!("route `{route}` does not generate {seq:?}")));
    }
    Ok(())
}

/// `p_0, ..., p_n` by the given route.
pub fn p_sequence(n: usize, route: SequenceRoute) -> Result<Vec<IntPoly>> {
    expect_sequence(route, Sequence::P)?;
    match route {
        SequenceRoute::DiffRecurrence => {
            let x = IntPoly::x();
            // x(1 - 2x)
            let lin = Poly::new(vec![BigInt::zero(), BigInt::one(), BigInt::from(-2)]);
            let x2 = IntPoly::monomial(BigInt::one(), 2);
            let mut out = vec![IntPoly::one()];
            for _ in 0..n {
                let p = out.last().unwrap();
                let d1 = p.derivative();
                let d2 = d1.derivative();
                let next = &(&(&x2 * &d2) + &(&lin * &d1)) - &(&x * p);
                out.push(next);
            }
            Ok(out)
        }
        SequenceRoute::SumRecurrence => {
            let mut out = vec![IntPoly::one()];
            for m in 0..n {
                let sum = out.iter().enumerate().fold(IntPoly::zero(), |acc, (k, pk)| {
                    &acc + &pk.scale(&binomial(2 * m + 1, 2 * k as i64))
                });
                out.push(-&sum.shift(1));
            }
            Ok(out)
        }
        SequenceRoute::ExplicitCoeffs => (0..=n).map(explicit_p).collect(),
        _ => unreachable!(),
    }
}

fn explicit_p(n: usize) -> Result<IntPoly> {
    if n == 0 {
        return Ok(IntPoly::one());
    }
    let mut coeffs = vec![BigInt::zero()];
    for k in 1..=n {
        coeffs.push(coeff_a(n, k)?);
    }
    Ok(Poly::new(coeffs))
}

pub fn gen_p(n: usize, route: SequenceRoute) -> Result<IntPoly> {
    if route == SequenceRoute::ExplicitCoeffs {
        return explicit_p(n);
    }
    Ok(p_sequence(n, route)?.pop().unwrap())
}

/// Inner double sum shared by the explicit coefficient formula and the
/// explicit Bernoulli/Euler formulas:
/// `S(n, k) = sum_r (-1)^r/2^r C(k,r) sum_j (-1)^j/2^j C(k-r,j) (r-j)^(2n)`,
/// so that `a_{n,k} = S(n,k) / k!`. Uses `0^0 = 1`.
pub fn explicit_inner_sum(n: usize, k: usize) -> Rational {
    let mut total = Rational::zero();
    for r in 0..=k {
        let mut inner = Rational::zero();
        for j in 0..=(k - r) {
            let base = BigInt::from(r as i64 - j as i64);
            let pw = num::pow(base, 2 * n);
            if pw.is_zero() {
                continue;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            inner += Rational::from_integer(pw * binomial(k - r, j as i64) * sign) * pow2(-(j as i64));
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        total += inner * Rational::from_integer(binomial(k, r as i64) * sign) * pow2(-(r as i64));
    }
    total
}

/// Explicit coefficient `a_{n,k}` of `x^k` in `p_n`, `1 <= k <= n`.
pub fn coeff_a(n: usize, k: usize) -> Result<BigInt> {
    if k < 1 || k > n {
        return Err(invalid(format!("coeff_a needs 1 <= k <= n, got n={n}, k={k}")));
    }
    let v = explicit_inner_sum(n, k) / Rational::from_integer(factorial(k));
    to_integer(&v).ok_or_else(|| Error::Inconsistency(format!("a_({n},{k}) = {v} is not an integer")))
}

/// `q_0, ..., q_n` by the given route.
pub fn q_sequence(n: usize, route: SequenceRoute) -> Result<Vec<IntPoly>> {
    expect_sequence(route, Sequence::Q)?;
    let ps = p_sequence(n, SequenceRoute::DiffRecurrence)?;
    q_sequence_from(&ps, route)
}

/// `q_0, ..., q_{len-1}` built from the supplied `p` table.
pub fn q_sequence_from(ps: &[IntPoly], route: SequenceRoute) -> Result<Vec<IntPoly>> {
    expect_sequence(route, Sequence::Q)?;
    let out = match route {
        SequenceRoute::DerivativeSum => ps
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let mut acc = IntPoly::zero();
                let mut d = p.clone();
                for _ in 0..=n {
                    acc = &acc + &d;
                    d = d.derivative();
                }
                acc
            })
            .collect(),
        SequenceRoute::EulerConvolution => ps
            .iter()
            .enumerate()
            .map(|(n, _)| {
                (0..=n).fold(IntPoly::zero(), |acc, k| {
                    let c = euler_number(2 * (n - k)) * binomial(2 * n, 2 * k as i64);
                    &acc + &ps[k].scale(&c)
                })
            })
            .collect(),
        SequenceRoute::InverseRecurrence => {
            let mut qs: Vec<IntPoly> = Vec::with_capacity(ps.len());
            for (n, p) in ps.iter().enumerate() {
                let s = qs
                    .iter()
                    .enumerate()
                    .fold(IntPoly::zero(), |acc, (k, q)| &acc + &q.scale(&binomial(2 * n, 2 * k as i64)));
                qs.push(p - &s);
            }
            qs
        }
        _ => unreachable!(),
    };
    Ok(out)
}

pub fn gen_q(n: usize, route: SequenceRoute) -> Result<IntPoly> {
    Ok(q_sequence(n, route)?.pop().unwrap())
}

/// Generates `n` of either sequence.
pub fn gen(seq: Sequence, n: usize, route: SequenceRoute) -> Result<IntPoly> {
    match seq {
        Sequence::P => gen_p(n, route),
        Sequence::Q => gen_q(n, route),
    }
}

/// `exp(-x (cosh t - 1))` truncated at `t^(2N)`.
pub fn gf_phi(order: usize) -> TruncatedBiseries {
    let terms = (0..=order)
        .map(|n| {
            if n == 0 {
                RatPoly::zero()
            } else {
                RatPoly::monomial(-Rational::new(One::one(), factorial(2 * n)), 1)
            }
        })
        .collect();
    TruncatedBiseries::new(order, terms)
        .exp()
        .expect("exponent has zero constant term")
}

/// `exp(-x (cosh t - 1)) / cosh t` truncated at `t^(2N)`.
pub fn gf_f(order: usize) -> TruncatedBiseries {
    gf_phi(order)
        .div(&TruncatedBiseries::cosh(order))
        .expect("cosh has unit constant term")
}

/// `(2n)!` times term `n` of a generating series, as an integer polynomial.
pub fn scaled_term(series: &TruncatedBiseries, n: usize) -> Result<IntPoly> {
    let scaled = series.term(n).scale(&Rational::from_integer(factorial(2 * n)));
    scaled
        .to_integer()
        .ok_or_else(|| Error::Inconsistency(format!("(2n)! * term {n} is not an integer polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int_poly;
    use crate::rational::rat;

    #[test]
    fn known_p_values() {
        for route in SequenceRoute::P_ROUTES {
            let ps = p_sequence(4, route).unwrap();
            assert_eq!(ps[0], int_poly(&[1]), "{route}");
            assert_eq!(ps[1], int_poly(&[0, -1]), "{route}");
            assert_eq!(ps[2], int_poly(&[0, -1, 3]), "{route}");
            assert_eq!(ps[3], int_poly(&[0, -1, 15, -15]), "{route}");
            assert_eq!(ps[4], int_poly(&[0, -1, 63, -210, 105]), "{route}");
        }
    }

    #[test]
    fn known_q_values() {
        for route in SequenceRoute::Q_ROUTES {
            let qs = q_sequence(3, route).unwrap();
            assert_eq!(qs[0], int_poly(&[1]), "{route}");
            assert_eq!(qs[1], int_poly(&[-1, -1]), "{route}");
            assert_eq!(qs[2], int_poly(&[5, 5, 3]), "{route}");
            assert_eq!(qs[3], int_poly(&[-61, -61, -30, -15]), "{route}");
        }
    }

    #[test]
    fn explicit_coefficients() {
        assert_eq!(coeff_a(1, 1).unwrap(), BigInt::from(-1));
        assert_eq!(coeff_a(2, 2).unwrap(), BigInt::from(3));
        assert_eq!(coeff_a(4, 2).unwrap(), BigInt::from(63));
        assert!(coeff_a(3, 0).is_err());
        assert!(coeff_a(3, 4).is_err());
    }

    #[test]
    fn route_validation() {
        assert!(gen_p(2, SequenceRoute::DerivativeSum).is_err());
        assert!(gen_q(2, SequenceRoute::SumRecurrence).is_err());
        assert_eq!("euler_convolution".parse::<SequenceRoute>().unwrap(), SequenceRoute::EulerConvolution);
        assert!("nope".parse::<SequenceRoute>().is_err());
    }

    #[test]
    fn structural_values() {
        let ps = p_sequence(25, SequenceRoute::DiffRecurrence).unwrap();
        for (n, p) in ps.iter().enumerate().skip(1) {
            assert!(p.coeff(0).is_zero());
            assert_eq!(p.coeff(1), BigInt::from(-1));
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let lead = crate::combinatorics::double_factorial_odd(n as i64).unwrap() * sign;
            assert_eq!(p.leading_coeff(), lead);
            assert_eq!(p.degree(), Some(n));
        }
    }

    #[test]
    fn generating_series_terms() {
        assert_eq!(gf_phi(0).terms(), &[RatPoly::one()]);
        assert_eq!(gf_phi(1).terms()[1], RatPoly::monomial(rat(-1, 2), 1));
        let phi2 = gf_phi(2);
        assert_eq!(phi2.term(2), &int_poly(&[0, -1, 3]).to_rational().scale(&rat(1, 24)));
        assert_eq!(gf_f(0).terms(), &[RatPoly::one()]);
        assert_eq!(gf_f(1).term(1), &int_poly(&[-1, -1]).to_rational().scale(&rat(1, 2)));
        assert_eq!(scaled_term(&gf_f(3), 3).unwrap(), gen_q(3, SequenceRoute::DerivativeSum).unwrap());
    }

    // p_n(x + y) = sum_k C(2n,2k) p_k(x) p_{n-k}(y), sampled at deg+1 points y.
    #[test]
    fn binomial_type() {
        let ps = p_sequence(8, SequenceRoute::DiffRecurrence).unwrap();
        for n in 0..=8 {
            for yv in 0..=(n as i64 + 1) {
                let y = BigInt::from(yv - 2);
                let lhs = ps[n].taylor_shift(&y);
                let rhs = (0..=n).fold(IntPoly::zero(), |acc, k| {
                    let c = binomial(2 * n, 2 * k as i64) * ps[n - k].eval(&y);
                    &acc + &ps[k].scale(&c)
                });
                assert_eq!(lhs, rhs, "n={n}, y={y}");
            }
        }
    }
}
