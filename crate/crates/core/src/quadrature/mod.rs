//! Double-exponential quadrature at configurable MPFR precision.
//!
//! Finite intervals use the tanh-sinh map, `[a, ∞)` uses exp-sinh. Each
//! level halves the step and reuses the previous nodes; the error estimate
//! is the difference between the last two levels.

mod checks;
mod special;

use std::fmt;

use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use checks::{numeric_check_ids, numeric_checks, verify_all_numeric, verify_numeric, NumericCheck, Params};
pub use special::{
    bessel_k, bessel_k_alt, const_catalan, const_zeta, const_zeta_odd, moment_i, moment_m, BesselOrder,
};

/// Smallest accepted working precision in decimal digits.
pub const MIN_DIGITS: u32 = 15;
pub const DEFAULT_DIGITS: u32 = 30;
const GUARD_DIGITS: u32 = 10;
const MAX_LEVEL: u32 = 12;

/// Working precision in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Precision {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::InvalidArgument(format!("precision must be at least {MIN_DIGITS} digits, got {digits}")));
        }
        Ok(Self { digits })
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// MPFR bits including guard digits.
    pub fn bits(self) -> u32 {
        ((self.digits + GUARD_DIGITS) as f64 * std::f64::consts::LOG2_10).ceil() as u32
    }

    pub fn float(self, v: impl Into<f64>) -> Float {
        Float::with_val(self.bits(), v.into())
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    /// `10^-e` at working precision.
    pub fn eps(self, e: f64) -> Float {
        Float::with_val(self.bits(), 10).pow(-e)
    }

    pub fn parse(self, s: &str) -> Result<Float> {
        Float::parse(s)
            .map(|v| Float::with_val(self.bits(), v))
            .map_err(|e| Error::InvalidArgument(format!("bad number `{s}`: {e}")))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self { digits: DEFAULT_DIGITS }
    }
}

/// A float together with an estimate of its absolute error.
#[derive(Clone, Debug, PartialEq)]
pub struct NumReal {
    pub value: Float,
    pub err: Float,
    digits: u32,
}

impl NumReal {
    pub fn new(value: Float, err: Float, prec: Precision) -> Self {
        debug_assert!(err >= 0);
        Self { value, err, digits: prec.digits() }
    }

    /// A value whose only error is rounding at working precision.
    pub fn exact(value: Float, prec: Precision) -> Self {
        let err = Float::with_val(value.prec(), value.abs_ref()) * prec.eps(prec.digits() as f64);
        Self::new(value, err, prec)
    }

    /// Significant digits justified by the error estimate.
    pub fn justified_digits(&self) -> u32 {
        if self.err.is_zero() || self.value.is_zero() {
            return self.digits;
        }
        let ratio = Float::with_val(self.value.prec(), self.value.abs_ref()) / &self.err;
        let d = ratio.log10().to_f64().floor();
        (d.max(1.0) as u32).min(self.digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    fn combine(&self, other: &NumReal, value: Float) -> NumReal {
        NumReal { value, err: Float::with_val(self.err.prec(), &self.err + &other.err), digits: self.digits.min(other.digits) }
    }

    pub fn add(&self, other: &NumReal) -> NumReal {
        self.combine(other, Float::with_val(self.value.prec(), &self.value + &other.value))
    }

    pub fn sub(&self, other: &NumReal) -> NumReal {
        self.combine(other, Float::with_val(self.value.prec(), &self.value - &other.value))
    }

    pub fn scale(&self, c: &Float) -> NumReal {
        let c_abs = Float::with_val(c.prec(), c.abs_ref());
        NumReal {
            value: Float::with_val(self.value.prec(), &self.value * c),
            err: Float::with_val(self.err.prec(), &self.err * &c_abs),
            digits: self.digits,
        }
    }
}

impl fmt::Display for NumReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_float(&self.value, self.justified_digits()))
    }
}

impl Serialize for NumReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Scientific notation with `digits` significant digits.
pub fn format_float(v: &Float, digits: u32) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.to_string_radix(10, Some(digits.max(1) as usize))
}

/// Integration domain.
#[derive(Clone, Debug)]
pub enum Interval {
    Finite(Float, Float),
    /// `[a, ∞)`
    From(Float),
}

impl Interval {
    pub fn finite(a: &Float, b: &Float) -> Self {
        Interval::Finite(a.clone(), b.clone())
    }
}

/// Accuracy request for one integral.
#[derive(Clone, Copy, Debug)]
pub struct Goal {
    pub prec: Precision,
    /// Relative target `10^-rel_digits`.
    pub rel_digits: f64,
}

impl Goal {
    pub fn full(prec: Precision) -> Self {
        Self { prec, rel_digits: prec.digits() as f64 }
    }

    pub fn relative(prec: Precision, rel_digits: f64) -> Self {
        Self { prec, rel_digits: rel_digits.min(prec.digits() as f64) }
    }

    pub fn tighter(self, extra_digits: f64) -> Self {
        Self::relative(self.prec, self.rel_digits + extra_digits)
    }
}

struct Node {
    x: Float,
    w: Float,
}

trait Map {
    /// Node at parameter `t`, or `None` when it collapses onto an endpoint.
    fn node(&self, t: &Float) -> Option<Node>;
}

struct TanhSinh {
    a: Float,
    b: Float,
    half: Float,
    half_pi: Float,
}

impl Map for TanhSinh {
    fn node(&self, t: &Float) -> Option<Node> {
        // The map is symmetric in t; work with |t| and measure the node from
        // its nearer endpoint to avoid cancellation.
        let t_abs = Float::with_val(t.prec(), t.abs_ref());
        let s = Float::with_val(t.prec(), t_abs.sinh_ref()) * &self.half_pi;
        let e2s = Float::with_val(t.prec(), &s * 2u32).exp();
        let one_plus = Float::with_val(t.prec(), &e2s + 1u32);
        let delta = Float::with_val(t.prec(), &self.half * 2u32) / &one_plus;
        // w = half * (π/2) cosh t / cosh² s,  1/cosh² s = 4 / ((1 + e^{2s})(1 + e^{-2s}))
        let e_neg = Float::with_val(t.prec(), -s * 2u32).exp() + 1u32;
        let w = Float::with_val(t.prec(), t_abs.cosh_ref()) * &self.half * &self.half_pi * 4u32 / (one_plus * e_neg);
        let x = if t.is_sign_negative() {
            Float::with_val(t.prec(), &self.a + &delta)
        } else {
            Float::with_val(t.prec(), &self.b - &delta)
        };
        if x <= self.a || x >= self.b || !w.is_finite() {
            return None;
        }
        Some(Node { x, w })
    }
}

struct ExpSinh {
    a: Float,
    half_pi: Float,
}

impl Map for ExpSinh {
    fn node(&self, t: &Float) -> Option<Node> {
        let s = Float::with_val(t.prec(), t.sinh_ref()) * &self.half_pi;
        let es = s.exp();
        let x = Float::with_val(t.prec(), &self.a + &es);
        if x <= self.a || !x.is_finite() {
            return None;
        }
        let w = Float::with_val(t.prec(), t.cosh_ref()) * &self.half_pi * es;
        Some(Node { x, w })
    }
}

/// Weighted sum and weighted absolute sum over the nodes at `ts`.
///
/// Nodes are evaluated in parallel but summed in order, so results do not
/// depend on scheduling.
fn sum_nodes<F>(map: &(dyn Map + Sync), f: &F, ts: Vec<Float>, bits: u32) -> Result<(Float, Float)>
where
    F: Fn(&Float) -> Result<Float> + Sync,
{
    let terms: Vec<Float> = ts
        .par_iter()
        .filter_map(|t| map.node(t))
        .map(|node| {
            let v = f(&node.x)?;
            if !v.is_finite() {
                return Err(Error::NoConvergence(format!(
                    "integrand is not finite at x = {}",
                    format_float(&node.x, 12)
                )));
            }
            Ok(v * node.w)
        })
        .collect::<Result<_>>()?;
    let mut sum = Float::new(bits);
    let mut abs = Float::new(bits);
    for term in &terms {
        sum += term;
        abs += Float::with_val(bits, term.abs_ref());
    }
    Ok((sum, abs))
}

/// Integrates `f` over `interval` to the requested relative accuracy.
pub fn integrate<F>(f: F, interval: &Interval, goal: Goal) -> Result<NumReal>
where
    F: Fn(&Float) -> Result<Float> + Sync,
{
    let prec = goal.prec;
    let bits = prec.bits();
    let half_pi = prec.pi() / 2u32;
    let tail = prec.digits() as f64 + 20.0;
    let ln10 = std::f64::consts::LN_10;
    let h0 = 0.5f64;
    let (map, t_lo, t_hi): (Box<dyn Map + Sync>, f64, f64) = match interval {
        Interval::Finite(a, b) => {
            if a >= b {
                return Err(Error::InvalidArgument("empty integration interval".into()));
            }
            let half = Float::with_val(bits, b - a) / 2u32;
            let t_max = (ln10 * tail / std::f64::consts::PI).asinh() + 0.5;
            (Box::new(TanhSinh { a: a.clone(), b: b.clone(), half, half_pi: half_pi.clone() }), -t_max, t_max)
        }
        Interval::From(a) => {
            let t_min = -(2.0 * ln10 * tail / std::f64::consts::PI).asinh();
            let map = ExpSinh { a: a.clone(), half_pi: half_pi.clone() };
            let t_max = exp_sinh_upper(&map, &f, h0, prec, tail)?;
            (Box::new(map), t_min, t_max)
        }
    };
    let grid = |h: f64, odd_only: bool| -> Vec<Float> {
        let lo = (t_lo / h).floor() as i64;
        let hi = (t_hi / h).ceil() as i64;
        (lo..=hi).filter(|j| !odd_only || j.rem_euclid(2) == 1).map(|j| Float::with_val(bits, j) * h).collect()
    };
    let map: &(dyn Map + Sync) = map.as_ref();
    let (mut raw, mut raw_abs) = sum_nodes(map, &f, grid(h0, false), bits)?;
    let mut prev = Float::with_val(bits, &raw * h0);
    let target = prec.eps(goal.rel_digits);
    let mut h = h0;
    for level in 1..=MAX_LEVEL {
        h /= 2.0;
        let (s, a) = sum_nodes(map, &f, grid(h, true), bits)?;
        raw += s;
        raw_abs += a;
        let est = Float::with_val(bits, &raw * h);
        let diff = Float::with_val(bits, &est - &prev).abs();
        // Accuracy is measured against ∫|f| so cancelling integrals converge.
        let scale = Float::with_val(bits, &raw_abs * h);
        // Below level 3 agreement can be accidental.
        if level >= 3 && diff <= Float::with_val(bits, &scale * &target) {
            let floor = Float::with_val(bits, &scale * prec.eps(prec.digits() as f64 + GUARD_DIGITS as f64 / 2.0));
            return Ok(NumReal::new(est, diff.max(&floor), prec));
        }
        prev = est;
    }
    Err(Error::NoConvergence(format!(
        "no agreement to 1e-{} after {MAX_LEVEL} levels (last estimate {})",
        goal.rel_digits,
        format_float(&prev, 12)
    )))
}

/// Upper parameter bound for exp-sinh: walk outward until the weighted
/// integrand has been negligible for several consecutive nodes.
fn exp_sinh_upper<F>(map: &ExpSinh, f: &F, h: f64, prec: Precision, tail: f64) -> Result<f64>
where
    F: Fn(&Float) -> Result<Float>,
{
    let bits = prec.bits();
    let mut peak = Float::new(bits);
    let mut quiet = 0;
    let mut t = 0.0f64;
    let eps = prec.eps(tail);
    while t < 7.0 {
        if let Some(node) = map.node(&Float::with_val(bits, t)) {
            let v = Float::with_val(bits, f(&node.x)? * &node.w).abs();
            if v > peak {
                peak = v.clone();
            }
            if v <= Float::with_val(bits, &peak * &eps) {
                quiet += 1;
                if quiet >= 3 {
                    return Ok(t);
                }
            } else {
                quiet = 0;
            }
        }
        t += h;
    }
    Err(Error::NoConvergence("integrand does not decay on [a, ∞)".into()))
}

/// Sum of [`integrate`] over consecutive pieces `[p_i, p_{i+1}]`.
pub fn integrate_pieces<F>(f: F, points: &[Float], goal: Goal) -> Result<NumReal>
where
    F: Fn(&Float) -> Result<Float> + Sync,
{
    let mut total: Option<NumReal> = None;
    for w in points.windows(2) {
        let part = integrate(&f, &Interval::finite(&w[0], &w[1]), goal)?;
        total = Some(match total {
            Some(t) => t.add(&part),
            None => part,
        });
    }
    total.ok_or_else(|| Error::InvalidArgument("need at least two breakpoints".into()))
}

/// Outcome of one numeric identity check.
#[derive(Clone, Debug, Serialize)]
pub struct QuadResult {
    pub id: String,
    pub params: String,
    pub lhs: NumReal,
    pub rhs: NumReal,
    #[serde(serialize_with = "ser_short")]
    pub abs_diff: Float,
    #[serde(serialize_with = "ser_short")]
    pub rel_diff: Float,
    pub pass: bool,
    pub prec: u32,
    pub tol: String,
    /// Reported for information only; a failing probe is not a failed check.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub probe: bool,
    /// Why the comparison could not be made (e.g. non-convergence).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

fn ser_short<S: Serializer>(v: &Float, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_float(v, 6))
}

impl QuadResult {
    /// Compares relatively, falling back to the absolute difference when
    /// the right side vanishes.
    pub fn compare(id: &str, params: String, lhs: NumReal, rhs: NumReal, prec: Precision, tol: f64) -> Self {
        let bits = prec.bits();
        let abs_diff = Float::with_val(bits, &lhs.value - &rhs.value).abs();
        let rel_diff = if rhs.value.is_zero() {
            abs_diff.clone()
        } else {
            Float::with_val(bits, &abs_diff / Float::with_val(bits, rhs.value.abs_ref()))
        };
        let pass = rel_diff.is_finite() && rel_diff <= tol;
        Self {
            id: id.to_string(),
            params,
            lhs,
            rhs,
            abs_diff,
            rel_diff,
            pass,
            prec: prec.digits(),
            tol: format!("{tol:e}"),
            probe: false,
            diagnostic: None,
        }
    }

    /// A failed comparison whose sides could not be evaluated.
    pub fn failed(id: &str, params: String, err: &Error, prec: Precision, tol: f64) -> Self {
        let nan = || NumReal::new(Float::with_val(prec.bits(), f64::NAN), Float::new(prec.bits()), prec);
        let mut r = Self::compare(id, params, nan(), nan(), prec, tol);
        r.diagnostic = Some(err.to_string());
        r
    }

    /// Counts toward a verdict unless it is a probe.
    pub fn ok(&self) -> bool {
        self.pass || self.probe
    }
}
