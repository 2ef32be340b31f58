//! Scalar types of the exact half of the crate.
//!
//! [`Rational`] is `num`'s `BigRational`: it is kept in lowest terms with a
//! positive denominator, so structural equality is value equality. Its text
//! form is `"num/den"`, with the denominator dropped when it is 1.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `2^e` for any sign of `e`.
pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// `(-1)^e`.
pub fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r = Rational::from_str(t).map_err(|_| Error::InvalidArgument(format!("not a rational: {s:?}")))?;
    if r.denom().is_zero() {
        return Err(Error::InvalidArgument(format!("zero denominator: {s:?}")));
    }
    Ok(r)
}

/// Returns the integer value of `r`, or `None` when `r` is not integral.
pub fn to_integer(r: &Rational) -> Option<Integer> {
    r.is_integer().then(|| r.numer().clone())
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    let f = r - r.floor();
    debug_assert!(!f.is_negative());
    f
}

/// `#[serde(with = ...)]` helper for "num/den" strings.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
