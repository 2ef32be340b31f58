//! Bernoulli and Euler numbers, their polynomial-moment representations,
//! exact even zeta ratios and the odd-zeta combination identities.

mod odd_zeta;
mod table;
mod zeta_comb;

pub use odd_zeta::{
    odd_bernoulli_tau_poly, sinh_moment, theorem4_sum, verify_odd_zeta_identity, verify_theorem4, zeta_bracket, OddZetaReport,
};
pub use table::{number_table, table_agrees, NumberKind, NumberRow};
pub use zeta_comb::ZetaComb;

use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, factorial, primes_up_to};
use crate::error::{invalid, Error, Result};
use crate::moment::{exp_moment, exp_moment_div_x};
use crate::poly::{Poly, RatPoly};
use crate::rational::{int, pow2, sign_pow, to_integer, Rational};
use crate::sheffer::{explicit_inner_sum, gen_p, gen_q, SequenceRoute};

static BERNOULLI: LazyLock<RwLock<Vec<Rational>>> = LazyLock::new(|| RwLock::new(vec![Rational::one()]));
static EULER_EVEN: LazyLock<RwLock<Vec<BigInt>>> = LazyLock::new(|| RwLock::new(vec![BigInt::one()]));

/// `B_n` from `sum_{k<n} C(n,k) B_k = 0`, `B_0 = 1` (so `B_1 = -1/2`).
pub fn bernoulli_number(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().expect("cache poisoned").get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().expect("cache poisoned");
    while table.len() <= n {
        let m = table.len();
        let b = if m >= 3 && m % 2 == 1 {
            Rational::zero()
        } else {
            let s: Rational = table
                .iter()
                .enumerate()
                .map(|(k, bk)| bk * Rational::from_integer(binomial(m + 1, k as i64)))
                .sum();
            -s / int(m as i64 + 1)
        };
        table.push(b);
    }
    table[n].clone()
}

/// `B_n(x) = sum_k C(n,k) B_k x^(n-k)`.
pub fn bernoulli_poly(n: usize) -> RatPoly {
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in 0..=n {
        coeffs[n - k] = bernoulli_number(k) * Rational::from_integer(binomial(n, k as i64));
    }
    Poly::new(coeffs)
}

/// `E_n` from `sum_k C(2m,2k) E_{2k} = 0`, `E_0 = 1`; zero for odd `n`.
pub fn euler_number(n: usize) -> BigInt {
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let m = n / 2;
    if let Some(e) = EULER_EVEN.read().expect("cache poisoned").get(m) {
        return e.clone();
    }
    let mut table = EULER_EVEN.write().expect("cache poisoned");
    while table.len() <= m {
        let j = table.len();
        let s: BigInt = table
            .iter()
            .enumerate()
            .map(|(k, e)| e * binomial(2 * j, 2 * k as i64))
            .sum();
        table.push(-s);
    }
    table[m].clone()
}

macro_rules! tagged_enum {
    ($(#[$meta:meta])* $name:ident { $($(#[$vmeta:meta])* $variant:ident => $tag:literal),* $(,)? }) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum $name {
            $($(#[$vmeta])* #[serde(rename = $tag)] $variant),*
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $($name::$variant => $tag),* }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                Self::ALL.iter().copied().find(|v| v.as_str() == s)
                    .ok_or_else(|| invalid(format!("unknown variant `{s}`")))
            }
        }
    };
}

tagged_enum! {
    /// Routes to `B_{2n}` through the polynomials `p_n`.
    BernoulliVariant {
        /// `n/(1-2^{2n}) ∫ e^{-2x} p_n(x) dx/x`
        MomentRateTwo => "eq2_13",
        /// `2n/(2^{2n}-2^{4n}) ∫ e^{-x} p_n(x) dx/x`
        MomentRateOne => "eq2_37",
        /// explicit triple sum of the rate-two moment
        ExplicitRateTwo => "explicit_2_39",
        /// explicit triple sum of the rate-one moment
        ExplicitRateOne => "explicit_2_40",
        /// `2n/(2^{2n}(2^{2n}-1)) sum_k C(2n-1,2k) E_{2k}`
        EulerConnection => "thm1",
    }
}

tagged_enum! {
    /// Routes to `E_{2n}`.
    EulerVariant {
        /// `∫ e^{-x} p_n(x) dx`
        Moment => "moment_2_20",
        /// `q_n(0)`
        QAtZero => "q_at_0",
        /// explicit triple sum
        Explicit => "explicit",
        /// `1 - sum_{k<n} 2^{2(n-k)-1} C(2n,2k) E_{2k}`
        Recurrence => "thm2",
    }
}

tagged_enum! {
    /// Routes to the rational `ζ(2n)/π^{2n}`.
    ZetaVariant {
        /// from `B_{2n}`
        Bernoulli => "euler_2_10",
        /// from `∫ e^{-x} p_n(x) dx/x`
        Moment => "moment_2_42",
        /// from a finite sum of Euler numbers
        EulerSum => "corollary1",
    }
}

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(invalid(format!("{what} needs n >= 1")));
    }
    Ok(())
}

fn p_of(n: usize) -> Result<Poly<BigInt>> {
    gen_p(n, SequenceRoute::DiffRecurrence)
}

/// `B_{2n}` by one of the `p_n`-based formulas, `n >= 1`.
pub fn bernoulli_via_moment(n: usize, variant: BernoulliVariant) -> Result<Rational> {
    require_positive(n, "bernoulli_via_moment")?;
    let nn = n as i64;
    let four_n = pow2(2 * nn);
    match variant {
        BernoulliVariant::MomentRateTwo => {
            let m = exp_moment_div_x(&p_of(n)?, &int(2))?;
            Ok(int(nn) / (int(1) - four_n) * m)
        }
        BernoulliVariant::MomentRateOne => {
            let m = exp_moment_div_x(&p_of(n)?, &int(1))?;
            Ok(int(2 * nn) / (&four_n - &four_n * &four_n) * m)
        }
        BernoulliVariant::ExplicitRateTwo => {
            let s: Rational = (1..=n)
                .map(|k| explicit_inner_sum(n, k) * pow2(-(k as i64)) / int(k as i64))
                .sum();
            Ok(int(nn) / (int(1) - four_n) * s)
        }
        BernoulliVariant::ExplicitRateOne => {
            let s: Rational = (1..=n).map(|k| explicit_inner_sum(n, k) / int(k as i64)).sum();
            Ok(int(2 * nn) / (&four_n * (int(1) - &four_n)) * s)
        }
        BernoulliVariant::EulerConnection => {
            let s: BigInt = (0..n).map(|k| binomial(2 * n - 1, 2 * k as i64) * euler_number(2 * k)).sum();
            Ok(int(2 * nn) / (&four_n * (&four_n - int(1))) * Rational::from_integer(s))
        }
    }
}

fn integral(v: Rational, what: &str) -> Result<BigInt> {
    to_integer(&v).ok_or_else(|| Error::Inconsistency(format!("{what} = {v} is not an integer")))
}

/// `E_{2n}` by one of the alternative routes.
pub fn euler_via(n: usize, variant: EulerVariant) -> Result<BigInt> {
    match variant {
        EulerVariant::Moment => integral(exp_moment(&p_of(n)?, &int(1))?, "moment"),
        EulerVariant::QAtZero => Ok(gen_q(n, SequenceRoute::DerivativeSum)?.coeff(0)),
        EulerVariant::Explicit => {
            // sum_k k! sum_r (-1)^r/(2^r r!) sum_j (-1)^j (r-j)^{2n} / (2^j j! (k-r-j)!), 0^0 = 1
            let mut total = Rational::zero();
            for k in 0..=n {
                let kf = Rational::from_integer(factorial(k));
                for r in 0..=k {
                    let rf = pow2(-(r as i64)) * int(sign_pow(r as i64)) / Rational::from_integer(factorial(r));
                    for j in 0..=(k - r) {
                        let pw = num::pow(BigInt::from(r as i64 - j as i64), 2 * n);
                        if pw.is_zero() {
                            continue;
                        }
                        let den = factorial(j) * factorial(k - r - j);
                        total += &kf * &rf * pow2(-(j as i64)) * Rational::new(pw * sign_pow(j as i64), den);
                    }
                }
            }
            integral(total, "explicit Euler sum")
        }
        EulerVariant::Recurrence => {
            require_positive(n, "euler_via(thm2)")?;
            let s: BigInt = (0..n)
                .map(|k| (BigInt::one() << (2 * (n - k) - 1)) * binomial(2 * n, 2 * k as i64) * euler_number(2 * k))
                .sum();
            Ok(BigInt::one() - s)
        }
    }
}

/// The rational number `ζ(2n)/π^{2n}`, `n >= 1`.
pub fn zeta_even_ratio(n: usize, variant: ZetaVariant) -> Result<Rational> {
    require_positive(n, "zeta_even_ratio")?;
    let nn = n as i64;
    let four_n_minus_1 = pow2(2 * nn) - int(1);
    match variant {
        ZetaVariant::Bernoulli => Ok(int(sign_pow(nn - 1)) * pow2(2 * nn - 1) * bernoulli_number(2 * n)
            / Rational::from_integer(factorial(2 * n))),
        ZetaVariant::Moment => {
            let m = exp_moment_div_x(&p_of(n)?, &int(1))?;
            Ok(int(sign_pow(nn)) * m
                / (int(2) * &four_n_minus_1 * Rational::from_integer(factorial(2 * n - 1))))
        }
        ZetaVariant::EulerSum => {
            let s: Rational = (0..n)
                .map(|k| {
                    Rational::new(euler_number(2 * k), factorial(2 * k) * factorial(2 * (n - k) - 1))
                })
                .sum();
            Ok(int(sign_pow(nn + 1)) * s / (int(2) * four_n_minus_1))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaudtClausenReport {
    pub n: usize,
    /// `2(2^{2n}-1) B_{2n}` is an integer.
    pub integrality_2_43: bool,
    /// `2(2^{2n}-1) (2n-1)! ζ(2n)/π^{2n}` is an integer.
    pub integrality_2_44: bool,
    /// `B_{2n} + sum_{(p-1) | 2n} 1/p` is an integer.
    pub fractional_part_ok: bool,
}

impl StaudtClausenReport {
    pub fn all_ok(&self) -> bool {
        self.integrality_2_43 && self.integrality_2_44 && self.fractional_part_ok
    }
}

pub fn staudt_clausen_check(n: usize) -> Result<StaudtClausenReport> {
    require_positive(n, "staudt_clausen_check")?;
    let b = bernoulli_number(2 * n);
    let factor = int(2) * (pow2(2 * n as i64) - int(1));
    let z = zeta_even_ratio(n, ZetaVariant::Moment)?;
    let twice_n = 2 * n as u64;
    // (p - 1) | 2n forces p <= 2n + 1.
    let prime_sum: Rational = primes_up_to(twice_n + 1)
        .into_iter()
        .filter(|p| twice_n % (p - 1) == 0)
        .map(|p| Rational::new(BigInt::one(), BigInt::from(p)))
        .sum();
    Ok(StaudtClausenReport {
        n,
        integrality_2_43: (&factor * &b).is_integer(),
        integrality_2_44: (&factor * z * Rational::from_integer(factorial(2 * n - 1))).is_integer(),
        fractional_part_ok: (b + prime_sum).is_integer(),
    })
}

/// `(-1)^{n-1} B_{2n} > 0`.
pub fn bernoulli_sign_ok(n: usize) -> bool {
    let b = bernoulli_number(2 * n);
    if n % 2 == 1 {
        b.is_positive()
    } else {
        b.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(3), int(0));
        assert_eq!(bernoulli_number(4), rat(-1, 30));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert_eq!(bernoulli_number(14), rat(7, 6));
    }

    #[test]
    fn bernoulli_polys() {
        assert_eq!(bernoulli_poly(2), crate::poly::rat_poly(&[(1, 6), (-1, 1), (1, 1)]));
        assert_eq!(bernoulli_poly(4), crate::poly::rat_poly(&[(-1, 30), (0, 1), (1, 1), (-2, 1), (1, 1)]));
        assert_eq!(bernoulli_poly(3).eval(&rat(1, 2)), int(0));
    }

    #[test]
    fn euler_values() {
        assert_eq!(euler_number(0), BigInt::from(1));
        assert_eq!(euler_number(2), BigInt::from(-1));
        assert_eq!(euler_number(4), BigInt::from(5));
        assert_eq!(euler_number(6), BigInt::from(-61));
        assert_eq!(euler_number(8), BigInt::from(1385));
        assert_eq!(euler_number(7), BigInt::zero());
    }

    #[test]
    fn bernoulli_variant_examples() {
        assert_eq!(bernoulli_via_moment(1, BernoulliVariant::MomentRateTwo).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_via_moment(2, BernoulliVariant::MomentRateTwo).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_via_moment(1, BernoulliVariant::EulerConnection).unwrap(), rat(1, 6));
        assert!(bernoulli_via_moment(0, BernoulliVariant::MomentRateOne).is_err());
        for n in 1..=12 {
            for &v in BernoulliVariant::ALL {
                assert_eq!(bernoulli_via_moment(n, v).unwrap(), bernoulli_number(2 * n), "n={n} {v}");
            }
        }
    }

    #[test]
    fn euler_variant_examples() {
        assert_eq!(euler_via(1, EulerVariant::Moment).unwrap(), BigInt::from(-1));
        assert_eq!(euler_via(2, EulerVariant::QAtZero).unwrap(), BigInt::from(5));
        assert_eq!(euler_via(1, EulerVariant::Recurrence).unwrap(), BigInt::from(-1));
        assert!(euler_via(0, EulerVariant::Recurrence).is_err());
        assert_eq!(euler_via(0, EulerVariant::Explicit).unwrap(), BigInt::from(1));
        for n in 0..=12 {
            for &v in EulerVariant::ALL {
                if n == 0 && v == EulerVariant::Recurrence {
                    continue;
                }
                assert_eq!(euler_via(n, v).unwrap(), euler_number(2 * n), "n={n} {v}");
            }
        }
    }

    #[test]
    fn zeta_ratios() {
        assert_eq!(zeta_even_ratio(1, ZetaVariant::Bernoulli).unwrap(), rat(1, 6));
        assert_eq!(zeta_even_ratio(2, ZetaVariant::Bernoulli).unwrap(), rat(1, 90));
        assert_eq!(zeta_even_ratio(1, ZetaVariant::EulerSum).unwrap(), rat(1, 6));
        assert_eq!(zeta_even_ratio(3, ZetaVariant::Moment).unwrap(), rat(1, 945));
        for n in 1..=15 {
            let a = zeta_even_ratio(n, ZetaVariant::Bernoulli).unwrap();
            assert_eq!(zeta_even_ratio(n, ZetaVariant::Moment).unwrap(), a);
            assert_eq!(zeta_even_ratio(n, ZetaVariant::EulerSum).unwrap(), a);
        }
    }

    #[test]
    fn staudt_clausen_examples() {
        for n in [1, 3, 7] {
            assert!(staudt_clausen_check(n).unwrap().all_ok(), "n={n}");
        }
        assert_eq!(int(2) * int(63) * bernoulli_number(6), int(3));
        assert_eq!(bernoulli_number(2) + rat(1, 2) + rat(1, 3), int(1));
    }

    #[test]
    fn variant_tags() {
        assert_eq!("thm1".parse::<BernoulliVariant>().unwrap(), BernoulliVariant::EulerConnection);
        assert_eq!("q_at_0".parse::<EulerVariant>().unwrap(), EulerVariant::QAtZero);
        assert_eq!(ZetaVariant::EulerSum.to_string(), "corollary1");
        assert!("eq9".parse::<ZetaVariant>().is_err());
    }

    #[test]
    fn bernoulli_poly_properties() {
        for n in 1..=20usize {
            let b = bernoulli_poly(n);
            // B_n' = n B_{n-1}
            assert_eq!(b.derivative(), bernoulli_poly(n - 1).scale(&int(n as i64)));
            // B_n(x+1) - B_n(x) = n x^{n-1}
            let diff = &b.taylor_shift(&int(1)) - &b;
            assert_eq!(diff, RatPoly::monomial(int(n as i64), n - 1));
            // B_n(1-x) = (-1)^n B_n(x)
            let refl = b.compose(&crate::poly::rat_poly(&[(1, 1), (-1, 1)]));
            assert_eq!(refl, b.scale(&int(sign_pow(n as i64))));
            // multiplication formula, m = 2 and 3
            for m in [2i64, 3] {
                let lhs = b.compose(&RatPoly::monomial(int(m), 1));
                let sum = (0..m).fold(RatPoly::zero(), |acc, k| &acc + &b.taylor_shift(&rat(k, m)));
                assert_eq!(lhs, sum.scale(&num::pow(int(m), n - 1)), "n={n} m={m}");
            }
        }
    }
}
