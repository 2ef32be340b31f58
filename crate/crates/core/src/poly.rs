//! Dense univariate polynomials over the exact rings.
//!
//! Coefficients are stored low-to-high with trailing zeros stripped on every
//! construction, so the zero polynomial is the empty list and equality of
//! polynomials is equality of coefficient lists.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, to_integer, Rational};

/// Coefficient ring of a [`Poly`].
pub trait Ring:
    Clone + PartialEq + fmt::Debug + fmt::Display + Zero + One + Neg<Output = Self> + Send + Sync + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn from_usize(v: usize) -> Self;
    fn to_rational(&self) -> Rational;
    fn is_negative_value(&self) -> bool;
    fn is_integral(&self) -> bool;
}

macro_rules! impl_ring {
    ($t:ty, $to_rat:expr, $integral:expr) => {
        impl Ring for $t {
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn from_usize(v: usize) -> Self {
                <$t>::from(BigInt::from(v))
            }
            fn to_rational(&self) -> Rational {
                ($to_rat)(self)
            }
            fn is_negative_value(&self) -> bool {
                self.is_negative()
            }
            fn is_integral(&self) -> bool {
                ($integral)(self)
            }
        }
    };
}

impl_ring!(BigInt, |v: &BigInt| Rational::from_integer(v.clone()), |_: &BigInt| true);
impl_ring!(Rational, |v: &Rational| v.clone(), |v: &Rational| v.is_integer());

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<Rational>;

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.mul_ref(&T::from_usize(k)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// Horner evaluation.
    pub fn eval(&self, x0: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, a| acc.mul_ref(x0).add_ref(a))
    }

    /// `self(inner(x))` by Horner's scheme over polynomials.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * inner) + &Self::constant(a.clone()))
    }

    /// `self(x + y)` as a polynomial in `x`.
    pub fn taylor_shift(&self, y: &T) -> Self {
        self.compose(&Self::new(vec![y.clone(), T::one()]))
    }

    pub fn to_rational(&self) -> RatPoly {
        Poly { coeffs: self.coeffs.iter().map(Ring::to_rational).collect() }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl RatPoly {
    /// Integer polynomial with the same coefficients, if they are all integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.coeffs.iter().map(to_integer).collect::<Option<Vec<_>>>().map(Poly::new)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    }
}

impl IntPoly {
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let rp = RatPoly::from_strings(items)?;
        rp.to_integer()
            .ok_or_else(|| Error::InvalidArgument("integer polynomial has a fractional coefficient".into()))
    }
}

fn zip_with<T: Ring>(a: &Poly<T>, b: &Poly<T>, f: impl Fn(&T, &T) -> T) -> Poly<T> {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = T::zero();
    Poly::new(
        (0..n)
            .map(|k| f(a.coeffs.get(k).unwrap_or(&zero), b.coeffs.get(k).unwrap_or(&zero)))
            .collect(),
    )
}

impl<T: Ring> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        zip_with(self, rhs, T::add_ref)
    }
}

impl<T: Ring> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        zip_with(self, rhs, T::sub_ref)
    }
}

impl<T: Ring> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Poly::new(out)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Ring> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Self) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

/// Human-readable form, highest power first: `-15x^3 + 15x^2 - x`.
impl<T: Ring> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative_value();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let body = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else if mag.is_integral() {
                write!(f, "{mag}{body}")?;
            } else {
                write!(f, "({mag}){body}")?;
            }
        }
        Ok(())
    }
}

impl<T: Ring> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        RatPoly::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        IntPoly::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

/// Builds an integer polynomial from small coefficients, low-to-high.
pub fn int_poly(coeffs: &[i64]) -> IntPoly {
    Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

/// Builds a rational polynomial from `(num, den)` pairs, low-to-high.
pub fn rat_poly(coeffs: &[(i64, i64)]) -> RatPoly {
    Poly::new(coeffs.iter().map(|&(n, d)| crate::rational::rat(n, d)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let p = int_poly(&[1, 2, 0, 0]);
        assert_eq!(p.coeffs().len(), 2);
        assert_eq!(int_poly(&[0, 0]), IntPoly::zero());
        assert!(IntPoly::zero().coeffs().is_empty());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn ring_ops() {
        let a = int_poly(&[0, -1, 3]);
        let b = int_poly(&[0, -1]);
        assert_eq!(&a * &b, int_poly(&[0, 0, 1, -3]));
        assert_eq!(&a + &b, int_poly(&[0, -2, 3]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!(-&b, int_poly(&[0, 1]));
    }

    #[test]
    fn derivative_and_eval() {
        let p3 = int_poly(&[0, -1, 15, -15]);
        assert_eq!(p3.derivative(), int_poly(&[-1, 30, -45]));
        assert_eq!(p3.nth_derivative(4), IntPoly::zero());
        let p2 = int_poly(&[0, -1, 3]);
        assert_eq!(p2.eval(&BigInt::zero()), BigInt::zero());
        assert_eq!(p2.eval(&BigInt::from(2)), BigInt::from(10));
    }

    #[test]
    fn shift_and_compose() {
        // (x+1)^2 = x^2 + 2x + 1
        let sq = int_poly(&[0, 0, 1]);
        assert_eq!(sq.taylor_shift(&BigInt::one()), int_poly(&[1, 2, 1]));
        let r = rat_poly(&[(0, 1), (1, 2)]);
        assert_eq!(r.compose(&rat_poly(&[(1, 1), (1, 1)])), rat_poly(&[(1, 2), (1, 2)]));
    }

    #[test]
    fn display() {
        assert_eq!(int_poly(&[0, -1, 3]).to_string(), "3x^2 - x");
        assert_eq!(int_poly(&[0, -1, 15, -15]).to_string(), "-15x^3 + 15x^2 - x");
        assert_eq!(int_poly(&[1]).to_string(), "1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(rat_poly(&[(1, 6), (-1, 1), (1, 1)]).to_string(), "x^2 - x + 1/6");
        assert_eq!(rat_poly(&[(0, 1), (-1, 2)]).to_string(), "-(1/2)x");
    }

    #[test]
    fn json_form() {
        let p = rat_poly(&[(1, 6), (-1, 1), (1, 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/6","-1","1"]"#);
        let back: RatPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<IntPoly>(r#"["1/2"]"#).is_err());
    }

    #[test]
    fn integer_view() {
        assert_eq!(rat_poly(&[(2, 1), (3, 1)]).to_integer(), Some(int_poly(&[2, 3])));
        assert_eq!(rat_poly(&[(1, 2)]).to_integer(), None);
        assert_eq!(int_poly(&[4]).to_rational().coeff(0), int(4));
        assert_eq!(rat_poly(&[(1, 3)]).coeff(5), rat(0, 1));
    }

    fn small_poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..6).prop_map(|v| rat_poly(&v))
    }

    proptest! {
        #[test]
        fn product_rule(a in small_poly(), b in small_poly()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b) + &(&a * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        // First-order finite difference with exact step h = 2^-20.
        #[test]
        fn derivative_matches_difference_quotient(p in small_poly(), x0 in (-8i64..8, 1i64..4)) {
            let x0 = rat(x0.0, x0.1);
            let h = crate::rational::pow2(-20);
            let dq = (p.eval(&(&x0 + &h)) - p.eval(&x0)) / &h;
            let exact = p.derivative().eval(&x0);
            // |dq - p'(x0)| <= h * max|p''| on [x0, x0+h]; a generous O(h) bound suffices here.
            let bound = &h * Rational::from_integer(BigInt::from(1_000_000_000i64));
            prop_assert!((dq - exact).abs() <= bound);
        }
    }
}
