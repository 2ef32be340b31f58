//! Power series in `t^2` truncated at a fixed order, with polynomial
//! coefficients in `x`.

use num::One;
use serde::Serialize;

use crate::combinatorics::factorial;
use crate::error::{invalid, Result};
use crate::poly::RatPoly;
use crate::rational::Rational;

/// `sum_{n=0}^{order} terms[n](x) * t^(2n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedBiseries {
    order: usize,
    terms: Vec<RatPoly>,
}

impl TruncatedBiseries {
    /// Pads with zeros or drops terms so that exactly `order + 1` remain.
    pub fn new(order: usize, mut terms: Vec<RatPoly>) -> Self {
        terms.resize(order + 1, RatPoly::zero());
        Self { order, terms }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![RatPoly::one()])
    }

    /// Series with constant-in-`x` coefficients `c(n)`.
    pub fn from_scalars(order: usize, c: impl Fn(usize) -> Rational) -> Self {
        Self::new(order, (0..=order).map(|n| RatPoly::constant(c(n))).collect())
    }

    /// `cosh t = sum t^(2n) / (2n)!`.
    pub fn cosh(order: usize) -> Self {
        Self::from_scalars(order, |n| Rational::new(One::one(), factorial(2 * n)))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &[RatPoly] {
        &self.terms
    }

    pub fn term(&self, n: usize) -> &RatPoly {
        &self.terms[n]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(invalid(format!("series orders differ: {} vs {}", self.order, other.order)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::new(self.order, self.terms.iter().zip(&other.terms).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::new(self.order, self.terms.iter().zip(&other.terms).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.order, self.terms.iter().map(|a| a.scale(c)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.order, self.terms.iter().map(|a| -a).collect())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = vec![RatPoly::zero(); self.order + 1];
        for (i, a) in self.terms.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.terms[..=self.order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Self::new(self.order, out))
    }

    /// `exp(u) = sum_j u^j / j!`; `u` must have a zero constant term, so
    /// `u^j` starts at `t^(2j)` and the sum stops at `j = order`.
    pub fn exp(&self) -> Result<Self> {
        if !self.terms[0].is_zero() {
            return Err(invalid("exp of a series with a nonzero constant term"));
        }
        let mut acc = Self::one(self.order);
        let mut power = Self::one(self.order);
        for j in 1..=self.order {
            power = power.mul(self)?;
            let inv_fact = Rational::new(One::one(), factorial(j));
            acc = acc.add(&power.scale(&inv_fact))?;
        }
        Ok(acc)
    }

    /// `self / divisor`, where the constant term of `divisor` is a nonzero
    /// constant polynomial.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_order(divisor)?;
        let b0 = match divisor.terms[0].degree() {
            Some(0) => divisor.terms[0].coeff(0),
            _ => return Err(invalid("division by a series whose constant term is not a nonzero constant")),
        };
        let inv_b0 = Rational::one() / b0;
        let mut q: Vec<RatPoly> = Vec::with_capacity(self.order + 1);
        for n in 0..=self.order {
            let mut r = self.terms[n].clone();
            for (k, qk) in q.iter().enumerate() {
                let b = &divisor.terms[n - k];
                if !b.is_zero() && !qk.is_zero() {
                    r = &r - &(qk * b);
                }
            }
            q.push(r.scale(&inv_b0));
        }
        Ok(Self::new(self.order, q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    /// Evaluates every coefficient polynomial at `x0`.
    pub fn eval_x(&self, x0: &Rational) -> Vec<Rational> {
        self.terms.iter().map(|p| p.eval(x0)).collect()
    }
}
