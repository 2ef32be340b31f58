//! First-order PDEs satisfied by the generating functions, checked on
//! truncated series.
//!
//! A [`TSeries`] is a power series in `t` (all powers) with polynomial
//! coefficients in `x`, together with the highest power up to which its
//! coefficients are exact. Products track that bound from the valuations of
//! their factors, so a residual is only ever compared where both sides are
//! fully determined.

use std::fmt;

use num::{One, Zero};

use crate::biseries::TruncatedBiseries;
use crate::combinatorics::factorial;
use crate::poly::RatPoly;
use crate::rational::{pow2, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct TSeries {
    /// Coefficients `0..=valid` are exact.
    valid: usize,
    coeffs: Vec<RatPoly>,
}

impl TSeries {
    pub fn new(valid: usize, mut coeffs: Vec<RatPoly>) -> Self {
        coeffs.resize(valid + 1, RatPoly::zero());
        Self { valid, coeffs }
    }

    /// Spreads a series in `t^2` onto all powers of `t`.
    pub fn from_biseries(b: &TruncatedBiseries) -> Self {
        let mut coeffs = vec![RatPoly::zero(); 2 * b.order() + 1];
        for (n, p) in b.terms().iter().enumerate() {
            coeffs[2 * n] = p.clone();
        }
        Self::new(2 * b.order(), coeffs)
    }

    pub fn from_scalars(valid: usize, c: impl Fn(usize) -> Rational) -> Self {
        Self::new(valid, (0..=valid).map(|k| RatPoly::constant(c(k))).collect())
    }

    /// `sinh(a t)` with `a = 2^scale_log2`.
    pub fn sinh(valid: usize, scale_log2: i64) -> Self {
        Self::from_scalars(valid, |k| {
            if k % 2 == 1 {
                pow2(scale_log2 * k as i64) / Rational::from_integer(factorial(k))
            } else {
                Rational::zero()
            }
        })
    }

    /// `cosh(a t)` with `a = 2^scale_log2`.
    pub fn cosh(valid: usize, scale_log2: i64) -> Self {
        Self::from_scalars(valid, |k| {
            if k % 2 == 0 {
                pow2(scale_log2 * k as i64) / Rational::from_integer(factorial(k))
            } else {
                Rational::zero()
            }
        })
    }

    pub fn valid(&self) -> usize {
        self.valid
    }

    pub fn coeff(&self, k: usize) -> &RatPoly {
        &self.coeffs[k]
    }

    fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX / 4)
    }

    pub fn d_dt(&self) -> Self {
        let coeffs = (1..=self.valid)
            .map(|k| self.coeffs[k].scale(&Rational::from_integer(k.into())))
            .collect();
        Self::new(self.valid.saturating_sub(1), coeffs)
    }

    pub fn d_dx(&self) -> Self {
        Self::new(self.valid, self.coeffs.iter().map(RatPoly::derivative).collect())
    }

    pub fn mul_x(&self) -> Self {
        Self::new(self.valid, self.coeffs.iter().map(|c| c.shift(1)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.valid, self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let valid = self.valid.min(other.valid);
        Self::new(valid, (0..=valid).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let valid = (self.valid + other.valuation()).min(other.valid + self.valuation());
        let valid = valid.min(self.valid + other.valid);
        let mut out = vec![RatPoly::zero(); valid + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(valid + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(valid + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(valid, out)
    }

    /// Quotient by a series with a nonzero constant scalar leading term.
    pub fn div(&self, divisor: &Self) -> Self {
        let b0 = divisor.coeffs[0].coeff(0);
        assert!(!b0.is_zero() && divisor.coeffs[0].degree() == Some(0), "divisor must start with a nonzero constant");
        let valid = self.valid.min(divisor.valid);
        let inv = Rational::one() / b0;
        let mut q: Vec<RatPoly> = Vec::with_capacity(valid + 1);
        for n in 0..=valid {
            let mut r = self.coeffs[n].clone();
            for (k, qk) in q.iter().enumerate() {
                let b = &divisor.coeffs[n - k];
                if !b.is_zero() && !qk.is_zero() {
                    r = &r - &(qk * b);
                }
            }
            q.push(r.scale(&inv));
        }
        Self::new(valid, q)
    }

    /// Powers `k <= valid` with a nonzero coefficient.
    pub fn nonzero_powers(&self) -> Vec<usize> {
        (0..=self.valid).filter(|&k| !self.coeffs[k].is_zero()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GfPde {
    /// `Φ_t + x sinh(t) Φ = 0`
    PhiT,
    /// `Φ_x + 2 sinh²(t/2) Φ = 0`
    PhiX,
    /// `x Φ_x = tanh(t/2) Φ_t`
    PhiMixed,
    /// `F_t + (x sinh t + tanh t) F = 0`
    FT,
    /// `F_x + 2 sinh²(t/2) F = 0`
    FX,
    /// `x F_x = tanh(t/2) (F_t + F tanh t)`
    FMixed,
}

impl GfPde {
    pub const ALL: [GfPde; 6] = [GfPde::PhiT, GfPde::PhiX, GfPde::PhiMixed, GfPde::FT, GfPde::FX, GfPde::FMixed];

    pub fn id(self) -> &'static str {
        match self {
            GfPde::PhiT => "gf_pde_1_22",
            GfPde::PhiX => "gf_pde_1_23",
            GfPde::PhiMixed => "gf_pde_1_24",
            GfPde::FT => "gf_pde_2_25",
            GfPde::FX => "gf_pde_2_26",
            GfPde::FMixed => "gf_pde_2_27",
        }
    }

    fn uses_f(self) -> bool {
        matches!(self, GfPde::FT | GfPde::FX | GfPde::FMixed)
    }
}

impl fmt::Display for GfPde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Scalar series used by the residuals, each with `valid` exact powers.
struct Kernels {
    sinh_t: TSeries,
    tanh_t: TSeries,
    tanh_half: TSeries,
    two_sinh2_half: TSeries,
}

impl Kernels {
    fn new(valid: usize) -> Self {
        let sinh_t = TSeries::sinh(valid, 0);
        let cosh_t = TSeries::cosh(valid, 0);
        let tanh_t = sinh_t.div(&cosh_t);
        // tanh(t/2) as a series quotient, independent of Bernoulli numbers.
        let tanh_half = TSeries::sinh(valid, -1).div(&TSeries::cosh(valid, -1));
        // 2 sinh²(t/2) = cosh t - 1
        let two_sinh2_half = cosh_t.sub(&TSeries::from_scalars(valid, |k| if k == 0 { One::one() } else { Zero::zero() }));
        Self { sinh_t, tanh_t, tanh_half, two_sinh2_half }
    }
}

/// Residual `lhs - rhs` of one PDE for a series `g` (which must be the
/// generating function matching the equation).
pub fn residual_of(eq: GfPde, g: &TSeries) -> TSeries {
    let k = Kernels::new(g.valid() + 1);
    let gt = g.d_dt();
    let gx = g.d_dx();
    match eq {
        GfPde::PhiT => gt.add(&k.sinh_t.mul(g).mul_x()),
        GfPde::PhiX | GfPde::FX => gx.add(&k.two_sinh2_half.mul(g)),
        GfPde::PhiMixed => gx.mul_x().sub(&k.tanh_half.mul(&gt)),
        GfPde::FT => gt.add(&k.sinh_t.mul(g).mul_x()).add(&k.tanh_t.mul(g)),
        GfPde::FMixed => gx.mul_x().sub(&k.tanh_half.mul(&gt.add(&k.tanh_t.mul(g)))),
    }
}

/// Residual of `eq` for the generating function truncated at `t^(2N)`.
pub fn residual(eq: GfPde, order: usize) -> TSeries {
    let g = if eq.uses_f() { super::gf_f(order) } else { super::gf_phi(order) };
    residual_of(eq, &TSeries::from_biseries(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn tanh_half_series() {
        // tanh(t/2) = t/2 - t^3/24 + t^5/240 - ...
        let t = TSeries::sinh(6, -1).div(&TSeries::cosh(6, -1));
        assert_eq!(t.coeff(1).coeff(0), rat(1, 2));
        assert_eq!(t.coeff(3).coeff(0), rat(-1, 24));
        assert_eq!(t.coeff(5).coeff(0), rat(1, 240));
        assert!(t.coeff(4).is_zero());
    }

    #[test]
    fn all_residuals_vanish() {
        for eq in GfPde::ALL {
            let r = residual(eq, 10);
            assert!(r.valid() >= 19, "{eq}: valid {}", r.valid());
            assert!(r.nonzero_powers().is_empty(), "{eq}: {:?}", r.nonzero_powers());
        }
    }

    #[test]
    fn residuals_detect_wrong_series() {
        // Swapping Φ and F must break the t-equations.
        let phi = TSeries::from_biseries(&crate::sheffer::gf_phi(6));
        let f = TSeries::from_biseries(&crate::sheffer::gf_f(6));
        assert!(!residual_of(GfPde::FT, &phi).nonzero_powers().is_empty());
        assert!(!residual_of(GfPde::PhiT, &f).nonzero_powers().is_empty());
        // Both series satisfy the x-equation, since F = Φ / cosh t.
        assert!(residual_of(GfPde::PhiX, &f).nonzero_powers().is_empty());
    }
}
