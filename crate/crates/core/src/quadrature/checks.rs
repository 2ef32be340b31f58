//! Registry of numeric identity checks.
//!
//! Double integrals over `K_{iτ}(x) e^{-x} p_n(x)` are iterated: the Bessel
//! function is expanded by its `cosh`/`cos` integral, and the `x`-integral of
//! `e^{-x(1 + cosh u)} x^k` is taken exactly as a Γ-moment. What remains is an
//! iterated pair of one-dimensional quadratures.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;

use super::special::{bessel_k_goal, const_catalan, const_zeta, moment_i, moment_m, BesselOrder};
use super::{bessel_k, bessel_k_alt, integrate, integrate_pieces, Goal, Interval, NumReal, Precision, QuadResult};
use crate::bernoulli_euler::{bernoulli_number, bernoulli_poly, zeta_even_ratio, ZetaVariant};
use crate::combinatorics::{binomial, factorial};
use crate::error::{invalid, Error, Result};
use crate::poly::{IntPoly, RatPoly};
use crate::rational::Rational;
use crate::sheffer::{gen_p, SequenceRoute};

const SINGLE_TOL: f64 = 1e-8;
const DOUBLE_TOL: f64 = 1e-6;
const BESSEL_TOL: f64 = 1e-25;
/// Never integrate `τ` beyond this, whatever the decay test says.
const TAU_CAP: f64 = 40.0;

/// Optional overrides of a check's default sample points.
#[derive(Clone, Debug, Default)]
pub struct Params {
    /// Replaces the list of `n` values.
    pub n: Option<usize>,
    /// Replaces the list of `τ`, `t` or `α` values, depending on the check.
    pub point: Option<String>,
}

pub struct NumericCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub default_tol: f64,
    /// Results are informational and never fail a run.
    pub probe: bool,
    run: fn(&mut Run) -> Result<()>,
}

macro_rules! checks {
    ($($id:literal, $tol:expr, $probe:expr, $run:ident, $desc:literal;)*) => {
        &[$(NumericCheck { id: $id, description: $desc, default_tol: $tol, probe: $probe, run: $run }),*]
    };
}

static REGISTRY: &[NumericCheck] = checks! {
    "bessel_cross", BESSEL_TOL, false, bessel_cross, "K_ν(x): cosh-integral vs exponential-integral representation";
    "bessel_half_order", 1e-27, false, bessel_half_order, "K_{1/2}(1) = √(π/2) e^{-1}";
    "eq1_25", DOUBLE_TOL, false, eq1_25, "τ^{2n-1}/sinh πτ = (-1)^n/π ∫ e^{-x} K_{iτ}(x) p_n(x) dx/x";
    "eq1_27", SINGLE_TOL, false, eq1_27, "∫ e^{-2x} p_n(x) dx/x against the exact ζ(2n)/π^{2n}";
    "eq1_28", DOUBLE_TOL, false, eq1_28, "∫∫ τ K_{iτ}(x) e^{-x} p_n(x) dτ dx/x and ζ(2n+1)";
    "eq3_1", DOUBLE_TOL, false, eq3_1, "∫_0^1 ∫ K_t(x) e^{-x} p_n(x) dx dt and ζ(2n+1)";
    "eq3_2", DOUBLE_TOL, false, eq3_2, "B_{2n+1}((1-t)/2) through ∫ K_t(x) e^{-x} p_n(x) dx";
    "eq3_4", SINGLE_TOL, false, eq3_4, "∫_0^1 B_{2n+1}((1-t)/2) dt/sin πt and ζ(2n+1)";
    "eq3_5", SINGLE_TOL, false, eq3_5, "∫_0^{1/2} B_{2n}(t) log cot πt dt and ζ(2n+1)";
    "eq3_7", SINGLE_TOL, false, eq3_7, "odd zeta values through the moments I_n";
    "eq3_8", SINGLE_TOL, false, eq3_8, "∫_0^1 B_{2n}(t) log sin πt dt and ζ(2n+1)";
    "eq3_9", SINGLE_TOL, false, eq3_9, "odd zeta values through the moments M_n";
    "moments", SINGLE_TOL, false, moments, "I_1 = 2G, M_2 = π log 2, M_4 closed form";
    "thm5", DOUBLE_TOL, false, thm5, "ζ(α) for non-integer α through a double Bessel integral";
    "thm5_integer", DOUBLE_TOL, true, thm5_integer, "the same representation at integer α (limit probe)";
    "zeta_oracle", DOUBLE_TOL, false, zeta_oracle, "ζ(3) series against ζ(3) extracted from the I_2 relation";
};

pub fn numeric_checks() -> &'static [NumericCheck] {
    REGISTRY
}

pub fn numeric_check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

fn find(id: &str) -> Result<&'static NumericCheck> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Runs one registered check. Quadrature failures become failed results with
/// a diagnostic; only bad ids or parameters are errors.
pub fn verify_numeric(id: &str, params: &Params, prec: Precision, tol: Option<f64>) -> Result<Vec<QuadResult>> {
    let check = find(id)?;
    let tol = tol.unwrap_or(check.default_tol);
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let mut run = Run { id: check.id, params, prec, tol, probe: check.probe, out: Vec::new() };
    (check.run)(&mut run)?;
    Ok(run.out)
}

/// Runs the given checks (all when `ids` is empty) in parallel; results keep
/// the order of `ids`.
pub fn verify_all_numeric(ids: &[&str], prec: Precision, tol: Option<f64>) -> Result<Vec<QuadResult>> {
    let ids: Vec<&str> = if ids.is_empty() { numeric_check_ids() } else { ids.to_vec() };
    for id in &ids {
        find(id)?;
    }
    let params = Params::default();
    let nested: Vec<Vec<QuadResult>> =
        ids.par_iter().map(|id| verify_numeric(id, &params, prec, tol)).collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

struct Run<'a> {
    id: &'static str,
    params: &'a Params,
    prec: Precision,
    tol: f64,
    probe: bool,
    out: Vec<QuadResult>,
}

impl Run<'_> {
    fn bits(&self) -> u32 {
        self.prec.bits()
    }

    fn ns(&self, defaults: &[usize]) -> Vec<usize> {
        self.params.n.map_or_else(|| defaults.to_vec(), |n| vec![n])
    }

    fn points(&self, defaults: &[&str]) -> Result<Vec<(String, Float)>> {
        let raw: Vec<String> = match &self.params.point {
            Some(p) => vec![p.clone()],
            None => defaults.iter().map(|s| s.to_string()).collect(),
        };
        raw.into_iter().map(|s| parse_point(&s, self.prec).map(|v| (s, v))).collect()
    }

    fn case(&mut self, params: String, lhs: Result<NumReal>, rhs: Result<NumReal>) {
        let mut r = match (lhs, rhs) {
            (Ok(l), Ok(r)) => QuadResult::compare(self.id, params, l, r, self.prec, self.tol),
            (Err(e), _) | (_, Err(e)) => QuadResult::failed(self.id, params, &e, self.prec, self.tol),
        };
        r.probe = self.probe;
        self.out.push(r);
    }

    /// Outer and inner goals for an iterated integral: two digits beyond the
    /// tolerance outside, two more inside.
    fn nested_goals(&self) -> (Goal, Goal) {
        let outer = Goal::relative(self.prec, -self.tol.log10() + 2.0);
        (outer, outer.tighter(2.0))
    }
}

/// Accepts decimals and simple fractions such as `1/3`.
fn parse_point(s: &str, prec: Precision) -> Result<Float> {
    match s.split_once('/') {
        Some((a, b)) => {
            let den = prec.parse(b.trim())?;
            if den.is_zero() {
                return Err(invalid(format!("zero denominator in `{s}`")));
            }
            Ok(prec.parse(a.trim())? / den)
        }
        None => prec.parse(s.trim()),
    }
}

fn big(v: &impl ToString, bits: u32) -> Float {
    Float::with_val(bits, Float::parse(v.to_string()).expect("integer literal"))
}

fn rational(r: &Rational, bits: u32) -> Float {
    big(r.numer(), bits) / big(r.denom(), bits)
}

fn float_coeffs(p: &IntPoly, bits: u32) -> Vec<Float> {
    p.coeffs().iter().map(|c| big(c, bits)).collect()
}

fn float_rat_coeffs(p: &RatPoly, bits: u32) -> Vec<Float> {
    p.coeffs().iter().map(|c| rational(c, bits)).collect()
}

fn horner(coeffs: &[Float], x: &Float) -> Float {
    let mut acc = Float::new(x.prec());
    for c in coeffs.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

fn exact(v: Float, prec: Precision) -> NumReal {
    NumReal::exact(v, prec)
}

/// `sum c_i v_i`
fn lin(terms: &[(Float, &NumReal)]) -> NumReal {
    let mut it = terms.iter();
    let (c, v) = it.next().expect("at least one term");
    it.fold(v.scale(c), |acc, (c, v)| acc.add(&v.scale(c)))
}

fn zeta(s: u32, prec: Precision) -> Result<NumReal> {
    const_zeta(&prec.float(s), prec)
}

fn sign(k: usize) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn p_coeffs(n: usize, bits: u32) -> Result<Vec<Float>> {
    Ok(float_coeffs(&gen_p(n, SequenceRoute::DiffRecurrence)?, bits))
}

/// `(-1)^n (2n)! (2^{2n+1} - 1) ζ(2n+1) / (2π)^{2n}`
fn odd_zeta_double_integral_value(n: usize, prec: Precision) -> Result<NumReal> {
    let bits = prec.bits();
    let z = zeta(2 * n as u32 + 1, prec)?;
    let two_pi = prec.pi() * 2u32;
    let c = big(&factorial(2 * n), bits) * ((Float::with_val(bits, 2).pow(2 * n as u32 + 1)) - 1u32)
        / two_pi.pow(2 * n as u32)
        * sign(n);
    Ok(z.scale(&c))
}

/// Γ-moments of `p_n(x) x^{-shift}` against `e^{-cx}`, as a polynomial in
/// `r = 1/c`: `∫ e^{-cx} p_n(x) x^{-shift} dx = sum_j m_j r^j`.
fn gamma_moment_coeffs(p: &[Float], shift: usize, bits: u32) -> Result<Vec<Float>> {
    let mut m = vec![Float::new(bits); p.len() + 1];
    for (k, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if k < shift {
            return Err(invalid("x-integral diverges at 0: p_n(0) != 0"));
        }
        let e = k - shift;
        m[e + 1] = Float::with_val(bits, a * big(&factorial(e), bits));
    }
    Ok(m)
}

/// `g(τ) = ∫_0^∞ e^{-x} K_{iτ}(x) p_n(x) dx/x = ∫_0^∞ cos(τu) m(1 + cosh u) du`.
struct ImagKernel {
    moments: Vec<Float>,
    /// Truncation point of the `u` integral.
    u_max: Float,
    goal: Goal,
}

impl ImagKernel {
    fn new(n: usize, goal: Goal) -> Result<Self> {
        let bits = goal.prec.bits();
        let moments = gamma_moment_coeffs(&p_coeffs(n, bits)?, 1, bits)?;
        // |m(1 + cosh u)| <= 2 C e^{-u} with C = sum |m_j|; cut where the tail
        // is below C 10^{-goal-1}.
        let u_max = (goal.rel_digits + 1.0) * std::f64::consts::LN_10 + std::f64::consts::LN_2;
        Ok(Self { moments, u_max: goal.prec.float(u_max), goal })
    }

    fn weight(&self, u: &Float) -> Float {
        let r = Float::with_val(u.prec(), Float::with_val(u.prec(), u.cosh_ref()) + 1u32).recip();
        horner(&self.moments, &r)
    }

    fn eval(&self, tau: &Float) -> Result<NumReal> {
        let bits = self.goal.prec.bits();
        let periods = (self.u_max.to_f64() * tau.to_f64().abs() / (2.0 * std::f64::consts::PI)).ceil().max(1.0) as u32;
        let points: Vec<Float> = (0..=periods).map(|i| Float::with_val(bits, &self.u_max * i) / periods).collect();
        integrate_pieces(|u| Ok(self.weight(u) * Float::with_val(bits, u * tau).cos()), &points, self.goal)
    }
}

/// `∫_0^∞ τ^w g(τ) dτ`, with the upper limit found by walking out until
/// `τ^w g(τ)` is negligible.
fn tau_moment(kernel: &ImagKernel, w: &Float, outer: Goal) -> Result<NumReal> {
    let prec = outer.prec;
    let bits = prec.bits();
    let f = |tau: &Float| -> Result<NumReal> {
        let g = kernel.eval(tau)?;
        Ok(g.scale(&Float::with_val(bits, tau.pow(w))))
    };
    let mut peak = f(&prec.float(1.0))?.value.abs();
    let negligible = prec.eps(outer.rel_digits + 1.0);
    let mut upper = 2.0;
    loop {
        let v = f(&prec.float(upper))?;
        let mag = Float::with_val(bits, v.value.abs_ref());
        if mag > peak {
            peak = mag.clone();
        }
        // Below its own error bar the value is noise and already negligible.
        if mag <= Float::with_val(bits, &peak * &negligible) || mag <= Float::with_val(bits, &v.err * 4u32) {
            break;
        }
        upper += 2.0;
        if upper > TAU_CAP {
            return Err(Error::NoConvergence(format!("τ-integrand still significant at τ = {TAU_CAP}")));
        }
    }
    integrate(
        |tau| Ok(kernel.eval(tau)?.value * Float::with_val(bits, tau.pow(w))),
        &Interval::finite(&prec.float(0.0), &prec.float(upper)),
        outer,
    )
}

fn bessel_cross(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let orders = run.points(&["0", "1/3", "1/2", "1"])?;
    for (label, nu) in orders {
        for x in ["0.5", "1", "2"] {
            let xf = prec.parse(x)?;
            let a = bessel_k(&BesselOrder::Real(nu.clone()), &xf, prec);
            let b = bessel_k_alt(&nu, &xf, prec);
            run.case(format!("nu={label}, x={x}"), a, b);
        }
    }
    Ok(())
}

fn bessel_half_order(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    let k = bessel_k(&BesselOrder::Real(prec.float(0.5)), &prec.float(1.0), prec);
    let closed = Float::with_val(bits, prec.pi() / 2u32).sqrt() * Float::with_val(bits, -1).exp();
    run.case("nu=1/2, x=1".into(), k, Ok(exact(closed, prec)));
    Ok(())
}

fn eq1_25(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    let (outer, inner) = run.nested_goals();
    let cases: Vec<(usize, String, Float)> = match (run.params.n, &run.params.point) {
        (None, None) => vec![(1, "0.5".into(), prec.float(0.5)), (2, "1.0".into(), prec.float(1.0))],
        _ => {
            let pts = run.points(&["0.5"])?;
            run.ns(&[1]).into_iter().flat_map(|n| pts.iter().map(move |(l, v)| (n, l.clone(), v.clone()))).collect()
        }
    };
    for (n, label, tau) in cases {
        if n == 0 {
            return Err(invalid("eq1_25 needs n >= 1"));
        }
        if tau <= 0 {
            return Err(invalid("eq1_25 needs τ > 0"));
        }
        let lhs = Float::with_val(bits, tau.clone().pow(2 * n as u32 - 1))
            / Float::with_val(bits, prec.pi() * &tau).sinh();
        let p = p_coeffs(n, bits)?;
        // p_n(0) = 0, so p_n(x)/x is a polynomial and the log singularity of
        // K_0 at the origin is harmless.
        let p_over_x = p[1..].to_vec();
        let order = BesselOrder::Imaginary(tau.clone());
        let rhs = integrate(
            |x| {
                let k = bessel_k_goal(&order, x, inner)?;
                Ok(k.value * Float::with_val(bits, -x).exp() * horner(&p_over_x, x))
            },
            &Interval::From(prec.float(0.0)),
            outer,
        )
        .map(|v| v.scale(&(Float::with_val(bits, sign(n)) / prec.pi())));
        run.case(format!("n={n}, tau={label}"), Ok(exact(lhs, prec)), rhs);
    }
    Ok(())
}

fn eq1_27(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    for n in run.ns(&[1, 2]) {
        if n == 0 {
            return Err(invalid("eq1_27 needs n >= 1"));
        }
        let p = p_coeffs(n, bits)?;
        let p_over_x = p[1..].to_vec();
        let lhs = integrate(
            |x| Ok(Float::with_val(bits, x * -2i32).exp() * horner(&p_over_x, x)),
            &Interval::From(prec.float(0.0)),
            Goal::full(prec),
        );
        let nn = n as i64;
        let ratio = zeta_even_ratio(n, ZetaVariant::Bernoulli)?;
        let exact_value = (crate::rational::pow2(2 * nn) - crate::rational::int(1)) / crate::rational::pow2(2 * (nn - 1))
            * crate::rational::int(crate::rational::sign_pow(nn))
            * Rational::from_integer(factorial(2 * n - 1))
            * ratio;
        run.case(format!("n={n}"), lhs, Ok(exact(rational(&exact_value, bits), prec)));
    }
    Ok(())
}

fn eq1_28(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let (outer, inner) = run.nested_goals();
    for n in run.ns(&[1, 2]) {
        if n == 0 {
            return Err(invalid("eq1_28 needs n >= 1"));
        }
        let kernel = ImagKernel::new(n, inner)?;
        let lhs = tau_moment(&kernel, &prec.float(1.0), outer);
        run.case(format!("n={n}"), lhs, odd_zeta_double_integral_value(n, prec));
    }
    Ok(())
}

fn eq3_1(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    let (outer, inner) = run.nested_goals();
    for n in run.ns(&[1, 2]) {
        if n == 0 {
            return Err(invalid("eq3_1 needs n >= 1"));
        }
        // ∫ K_t(x) e^{-x} p_n(x) dx = ∫ cosh(tu) m(1 + cosh u) du
        let moments = gamma_moment_coeffs(&p_coeffs(n, bits)?, 0, bits)?;
        let weight = |u: &Float| {
            let r = Float::with_val(bits, Float::with_val(bits, u.cosh_ref()) + 1u32).recip();
            horner(&moments, &r)
        };
        let lhs = integrate(
            |t| {
                let inner_value = integrate(
                    |u| Ok(weight(u) * Float::with_val(bits, u * t).cosh()),
                    &Interval::From(prec.float(0.0)),
                    inner,
                )?;
                Ok(inner_value.value)
            },
            &Interval::finite(&prec.float(0.0), &prec.float(1.0)),
            outer,
        );
        run.case(format!("n={n}"), lhs, odd_zeta_double_integral_value(n, prec));
    }
    Ok(())
}

fn eq3_2(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    let (outer, inner) = run.nested_goals();
    let pts = run.points(&["1/4", "1/2"])?;
    for n in run.ns(&[1]) {
        let p = p_coeffs(n, bits)?;
        let b = float_rat_coeffs(&bernoulli_poly(2 * n + 1), bits);
        for (label, t) in &pts {
            if !(*t > -1 && *t < 1) || t.is_zero() {
                return Err(invalid("eq3_2 needs 0 < |t| < 1"));
            }
            let lhs = horner(&b, &(Float::with_val(bits, 1 - t) / 2u32));
            let order = BesselOrder::Real(t.clone());
            let integral = integrate(
                |x| {
                    let k = bessel_k_goal(&order, x, inner)?;
                    Ok(k.value * Float::with_val(bits, -x).exp() * horner(&p, x))
                },
                &Interval::From(prec.float(0.0)),
                outer,
            );
            // -(2n+1)/(2^{2n+1} π) sin πt
            let c = -Float::with_val(bits, 2 * n + 1) / Float::with_val(bits, 2).pow(2 * n as u32 + 1) / prec.pi()
                * Float::with_val(bits, prec.pi() * t).sin();
            run.case(format!("n={n}, t={label}"), Ok(exact(lhs, prec)), integral.map(|v| v.scale(&c)));
        }
    }
    Ok(())
}

/// `(-1)^{n+1} k! (2 - 2^{-2n}) ζ(2n+1) / d` with the given `k` and divisor.
fn odd_zeta_scaled(n: usize, k: usize, divisor: Float, prec: Precision) -> Result<NumReal> {
    let bits = prec.bits();
    let c = big(&factorial(k), bits) * (Float::with_val(bits, 2) - Float::with_val(bits, 2).pow(-(2 * n as i32)))
        / divisor
        * sign(n + 1);
    Ok(zeta(2 * n as u32 + 1, prec)?.scale(&c))
}

fn eq3_4(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    for n in run.ns(&[1, 2]) {
        if n == 0 {
            return Err(invalid("eq3_4 needs n >= 1"));
        }
        let b = float_rat_coeffs(&bernoulli_poly(2 * n + 1), bits);
        let pi = prec.pi();
        let integral = integrate(
            |t| {
                let y = Float::with_val(bits, 1 - t) / 2u32;
                Ok(horner(&b, &y) / Float::with_val(bits, &pi * t).sin())
            },
            &Interval::finite(&prec.float(0.0), &prec.float(1.0)),
            Goal::full(prec),
        );
        let closed = odd_zeta_scaled(n, 2 * n + 1, Float::with_val(bits, prec.pi() * 2u32).pow(2 * n as u32 + 1), prec);
        run.case(format!("n={n}"), closed, integral);
    }
    Ok(())
}

fn eq3_5(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    for n in run.ns(&[1, 2]) {
        if n == 0 {
            return Err(invalid("eq3_5 needs n >= 1"));
        }
        let b = float_rat_coeffs(&bernoulli_poly(2 * n), bits);
        let pi = prec.pi();
        let integral = integrate(
            |t| {
                let x = Float::with_val(bits, &pi * t);
                let cot = Float::with_val(bits, x.cos_ref()) / Float::with_val(bits, x.sin_ref());
                Ok(horner(&b, t) * cot.ln())
            },
            &Interval::finite(&prec.float(0.0), &prec.float(0.5)),
            Goal::full(prec),
        );
        let divisor = Float::with_val(bits, 2).pow(2 * n as u32 + 1) * prec.pi().pow(2 * n as u32);
        run.case(format!("n={n}"), odd_zeta_scaled(n, 2 * n, divisor, prec), integral);
    }
    Ok(())
}

/// Moments `I_1..=I_max` (index 0 unused).
fn i_moments(max: u32, prec: Precision) -> Result<Vec<NumReal>> {
    let mut v = vec![NumReal::exact(Float::new(prec.bits()), prec)];
    for n in 1..=max {
        v.push(moment_i(n, prec)?);
    }
    Ok(v)
}

fn m_moments(max: u32, prec: Precision) -> Result<Vec<NumReal>> {
    let zero = NumReal::exact(Float::new(prec.bits()), prec);
    let mut v = vec![zero.clone(), zero];
    for n in 2..=max {
        v.push(moment_m(n, prec)?);
    }
    Ok(v)
}

fn bern(k: usize, bits: u32) -> Float {
    rational(&bernoulli_number(k), bits)
}

fn eq3_7(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    let pi = prec.pi();
    let g = const_catalan(prec);
    let i = i_moments(6, prec);
    let (z3, z5) = (zeta(3, prec), zeta(5, prec));
    // low-order specializations
    let first = (|| -> Result<(NumReal, NumReal)> {
        let i = i.clone()?;
        let lhs = lin(&[(prec.float(3.5), &z3.clone()?), (prec.float(1.0), &i[2])]);
        Ok((lhs, g.scale(&Float::with_val(bits, &pi * 2u32))))
    })();
    let second = (|| -> Result<(NumReal, NumReal)> {
        let i = i.clone()?;
        let lhs = lin(&[(prec.float(1.0), &i[4]), (prec.float(-46.5), &z5.clone()?)]);
        let two_pi = Float::with_val(bits, &pi * 2u32);
        let pi2 = Float::with_val(bits, pi.square_ref());
        let rhs = lin(&[(two_pi.clone(), &i[3]), (-two_pi * pi2, &g)]);
        Ok((lhs, rhs))
    })();
    for (label, r) in [("n=1 (7/2 ζ(3) + I_2 = 2πG)", first), ("n=2 (I_4 - 93/2 ζ(5) = 2π(I_3 - π²G))", second)] {
        let (l, r) = split(r);
        run.case(label.into(), l, r);
    }
    for n in run.ns(&[1, 2, 3]) {
        if n == 0 {
            return Err(invalid("eq3_7 needs n >= 1"));
        }
        let r = (|| -> Result<(NumReal, NumReal)> {
            let i = if 2 * n <= 6 { i.clone()? } else { i_moments(2 * n as u32, prec)? };
            // (-1)^{n+1} (2n+1)! (1 - 2^{-2n-1}) ζ(2n+1) + (n + 1/2) I_{2n}
            let zc = big(&factorial(2 * n + 1), bits)
                * (Float::with_val(bits, 1) - Float::with_val(bits, 2).pow(-(2 * n as i32) - 1))
                * sign(n + 1);
            let z = zeta(2 * n as u32 + 1, prec)?;
            let lhs = lin(&[(zc, &z), (prec.float(n as f64 + 0.5), &i[2 * n])]);
            let terms: Vec<(Float, &NumReal)> = (0..n)
                .map(|m| {
                    let d = n - m;
                    let c = big(&binomial(2 * n + 1, 2 * m as i64 + 1), bits)
                        * bern(2 * d, bits)
                        * Float::with_val(bits, pi.clone().pow(2 * d as i32 - 1))
                        * (Float::with_val(bits, 2).pow(2 * d as u32) - 1u32);
                    (c, &i[2 * m + 1])
                })
                .collect();
            Ok((lhs, lin(&terms)))
        })();
        let (l, r) = split(r);
        run.case(format!("n={n}, general form"), l, r);
    }
    Ok(())
}

fn split(r: Result<(NumReal, NumReal)>) -> (Result<NumReal>, Result<NumReal>) {
    match r {
        Ok((a, b)) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.clone()), Err(e)),
    }
}

fn eq3_8(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    for n in run.ns(&[1, 2]) {
        if n == 0 {
            return Err(invalid("eq3_8 needs n >= 1"));
        }
        let b = float_rat_coeffs(&bernoulli_poly(2 * n), bits);
        let pi = prec.pi();
        let integral = integrate(
            |t| Ok(horner(&b, t) * Float::with_val(bits, Float::with_val(bits, &pi * t).sin()).ln()),
            &Interval::finite(&prec.float(0.0), &prec.float(1.0)),
            Goal::full(prec),
        );
        let c = big(&factorial(2 * n), bits) / Float::with_val(bits, prec.pi() * 2u32).pow(2 * n as u32) * sign(n);
        let closed = zeta(2 * n as u32 + 1, prec).map(|z| z.scale(&c));
        run.case(format!("n={n}"), closed, integral);
    }
    Ok(())
}

fn eq3_9(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    let pi = prec.pi();
    let ln2 = Float::with_val(bits, rug::float::Constant::Log2);
    let m = m_moments(6, prec);
    let special = (|| -> Result<(NumReal, NumReal)> {
        let m = m.clone()?;
        let lhs = lin(&[(prec.float(21.0 / 8.0), &zeta(3, prec)?), (prec.float(1.0), &m[3])]);
        let rhs = Float::with_val(bits, pi.clone().square()) * 3u32 / 4u32 * &ln2;
        Ok((lhs, exact(rhs, prec)))
    })();
    let (l, r) = split(special);
    run.case("n=1 (21/8 ζ(3) + M_3 = 3π²/4 log 2)".into(), l, r);
    for n in run.ns(&[1, 2]) {
        if n == 0 {
            return Err(invalid("eq3_9 needs n >= 1"));
        }
        let r = (|| -> Result<(NumReal, NumReal)> {
            let m = if 2 * n + 2 <= 6 { m.clone()? } else { m_moments(2 * n as u32 + 2, prec)? };
            // (-1)^{n+1} (2(n+1))! 2^{-2n-1} ζ(2n+1) + (n+1) M_{2n+1}
            let zc = big(&factorial(2 * n + 2), bits) * Float::with_val(bits, 2).pow(-(2 * n as i32) - 1) * sign(n + 1);
            let z = zeta(2 * n as u32 + 1, prec)?;
            let lhs = lin(&[(zc, &z), (prec.float((n + 1) as f64), &m[2 * n + 1])]);
            let terms: Vec<(Float, &NumReal)> = (0..=n)
                .map(|k| {
                    let d = n - k;
                    let c = big(&binomial(2 * n + 2, 2 * k as i64 + 2), bits)
                        * bern(2 * d, bits)
                        * Float::with_val(bits, pi.clone().pow(2 * d as i32 - 1));
                    (c, &m[2 * k + 2])
                })
                .collect();
            Ok((lhs, lin(&terms)))
        })();
        let (l, r) = split(r);
        run.case(format!("n={n}, general form"), l, r);
    }
    Ok(())
}

fn moments(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    let pi = prec.pi();
    let ln2 = Float::with_val(bits, rug::float::Constant::Log2);
    let g = const_catalan(prec);
    run.case("I_1 = 2G".into(), moment_i(1, prec), Ok(g.scale(&prec.float(2.0))));
    run.case("M_2 = π log 2".into(), moment_m(2, prec), Ok(exact(Float::with_val(bits, &pi * &ln2), prec)));
    let m4 = zeta(3, prec).map(|z3| {
        let c = Float::with_val(bits, pi.clone().pow(3u32)) / 2u32 * &ln2;
        NumReal::exact(c, prec).sub(&z3.scale(&(Float::with_val(bits, &pi * 9u32) / 4u32)))
    });
    run.case("M_4 = π³/2 log 2 - 9π/4 ζ(3)".into(), moment_m(4, prec), m4);
    Ok(())
}

/// Branch data of the representation: `(n, w, sign)` with
/// `ζ-side = sign ∫∫ τ^w K_{iτ}(x) e^{-x} p_n(x) dx/x dτ`.
///
/// For odd `[α]` the sign is `(-1)^{([α]+1)/2}`: it comes from integrating
/// `τ^{2n-1}/sinh πτ = (-1)^n/π ∫ ...` against `τ^w`, with `n = ([α]+1)/2`.
pub(crate) fn zeta_branch(alpha: &Float) -> Result<(usize, Float, i32)> {
    if *alpha <= 1 {
        return Err(invalid("ζ(α) representation needs α > 1"));
    }
    let int_part = Float::with_val(alpha.prec(), alpha.floor_ref());
    let frac = Float::with_val(alpha.prec(), alpha - &int_part);
    let k = int_part.to_f64() as usize;
    if k % 2 == 0 {
        Ok((k / 2, frac, sign(k / 2)))
    } else {
        let n = (k + 1) / 2;
        Ok((n, frac - 1u32, sign(n)))
    }
}

/// `(2^α - 1) Γ(α) ζ(α) / (2π)^{α-1}`
fn zeta_alpha_side(alpha: &Float, prec: Precision) -> Result<NumReal> {
    let bits = prec.bits();
    let z = const_zeta(alpha, prec)?;
    let c = (Float::with_val(bits, 2).pow(alpha) - 1u32) * Float::with_val(bits, alpha.gamma_ref())
        / Float::with_val(bits, prec.pi() * 2u32).pow(Float::with_val(bits, alpha - 1u32));
    Ok(z.scale(&c))
}

fn zeta_alpha_cases(run: &mut Run, defaults: &[&str]) -> Result<()> {
    let prec = run.prec;
    let (outer, inner) = run.nested_goals();
    for (label, alpha) in run.points(defaults)? {
        let (n, w, s) = zeta_branch(&alpha)?;
        let rhs = ImagKernel::new(n, inner).and_then(|k| tau_moment(&k, &w, outer)).map(|v| v.scale(&prec.float(s)));
        run.case(format!("alpha={label}"), zeta_alpha_side(&alpha, prec), rhs);
    }
    Ok(())
}

fn thm5(run: &mut Run) -> Result<()> {
    zeta_alpha_cases(run, &["2.5", "3.5"])
}

fn thm5_integer(run: &mut Run) -> Result<()> {
    zeta_alpha_cases(run, &["2", "3"])
}

fn zeta_oracle(run: &mut Run) -> Result<()> {
    let prec = run.prec;
    let bits = run.bits();
    // ζ(3) = (2πG - I_2) / (7/2)
    let extracted = moment_i(2, prec).map(|i2| {
        let two_pi_g = const_catalan(prec).scale(&Float::with_val(bits, prec.pi() * 2u32));
        two_pi_g.sub(&i2).scale(&(prec.float(2.0) / 7u32))
    });
    run.case("ζ(3)".into(), Ok(super::const_zeta_odd(0, prec)), extracted);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p30() -> Precision {
        Precision::new(30).unwrap()
    }

    fn run(id: &str) -> Vec<QuadResult> {
        verify_numeric(id, &Params::default(), p30(), None).unwrap()
    }

    fn assert_all_pass(results: &[QuadResult]) {
        assert!(!results.is_empty());
        for r in results {
            assert!(r.pass, "{} [{}]: lhs {} rhs {} rel {:?} {:?}", r.id, r.params, r.lhs, r.rhs, r.rel_diff, r.diagnostic);
        }
    }

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids = numeric_check_ids();
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(verify_numeric("nope", &Params::default(), p30(), None), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn single_integral_checks_pass() {
        for id in ["eq1_27", "eq3_4", "eq3_5", "eq3_7", "eq3_8", "eq3_9", "moments", "zeta_oracle", "bessel_half_order"] {
            assert_all_pass(&run(id));
        }
    }

    #[test]
    fn eq3_7_first_relation_value() {
        let r = &run("eq3_7")[0];
        // I_2 = 1.54798240215774230465607676775...
        assert!((r.lhs.to_f64() - 3.5 * 1.2020569031595942 - 1.5479824021577423).abs() < 1e-12);
        assert!(r.rel_diff < 1e-25);
    }

    #[test]
    fn eq3_9_m3_value() {
        let m3 = moment_m(3, p30()).unwrap();
        // 3π²/4 log 2 - 21/8 ζ(3)
        assert!((m3.to_f64() - 1.9754169770989024).abs() < 1e-14);
    }

    #[test]
    fn odd_branch_sign_is_opposite_of_naive_form() {
        let prec = p30();
        // naive form: (-1)^{([α]-1)/2}
        for (alpha, naive) in [(3.5, -1), (5.5, 1), (1.5, 1)] {
            let (_, _, s) = zeta_branch(&prec.float(alpha)).unwrap();
            assert_eq!(s, -naive, "α = {alpha}");
        }
        let (n, w, s) = zeta_branch(&prec.float(2.5)).unwrap();
        assert_eq!((n, s), (1, -1));
        assert_eq!(w.to_f64(), 0.5);
        assert!(zeta_branch(&prec.float(1.0)).is_err());
    }

    #[test]
    fn gamma_moments_of_p1() {
        // p_1 = -x: ∫ e^{-cx} (-x) dx/x = -1/c
        let bits = p30().bits();
        let m = gamma_moment_coeffs(&p_coeffs(1, bits).unwrap(), 1, bits).unwrap();
        assert_eq!(m[1].to_f64(), -1.0);
        assert!(gamma_moment_coeffs(&[Float::with_val(bits, 1)], 1, bits).is_err());
    }

    #[test]
    fn imaginary_kernel_matches_closed_form() {
        // g(τ) = (-1)^n π τ^{2n-1} / sinh πτ
        let prec = p30();
        let bits = prec.bits();
        let kernel = ImagKernel::new(2, Goal::relative(prec, 12.0)).unwrap();
        let tau = prec.float(0.75);
        let g = kernel.eval(&tau).unwrap();
        let expect = prec.pi() * Float::with_val(bits, tau.clone().pow(3u32)) / Float::with_val(bits, prec.pi() * &tau).sinh();
        assert!((g.value - expect).abs().to_f64() < 1e-11);
    }

    #[test]
    fn failures_carry_a_diagnostic() {
        let r = QuadResult::failed("x", String::new(), &Error::NoConvergence("boom".into()), p30(), 1e-8);
        assert!(!r.pass && !r.ok());
        assert!(r.diagnostic.unwrap().contains("boom"));
    }

    #[test]
    fn bad_params_are_rejected() {
        let params = Params { n: None, point: Some("1".into()) };
        assert!(verify_numeric("eq3_2", &params, p30(), None).is_err());
        let params = Params { n: None, point: Some("x".into()) };
        assert!(verify_numeric("thm5", &params, p30(), None).is_err());
        assert!(verify_numeric("eq3_4", &Params::default(), p30(), Some(-1.0)).is_err());
    }
}
