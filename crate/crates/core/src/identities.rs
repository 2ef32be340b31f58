//! Registry of exactly verifiable identities, each swept over `n`.
//!
//! Every check reads `p_n` from a [`Context`] so a perturbed table can be
//! injected; Bernoulli and Euler numbers always come from the classical
//! recurrences.

use std::fmt::Display;
use std::sync::OnceLock;

use num::{BigInt, One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli_euler::{
    bernoulli_number, bernoulli_via_moment, euler_number, euler_via, staudt_clausen_check, theorem4_sum,
    verify_odd_zeta_identity, zeta_even_ratio, BernoulliVariant, EulerVariant, ZetaVariant,
};
use crate::biseries::TruncatedBiseries;
use crate::combinatorics::{binomial, double_factorial_odd, factorial};
use crate::error::{Error, Result};
use crate::moment::{exp_moment, exp_moment_div_x};
use crate::poly::{IntPoly, RatPoly};
use crate::rational::{int, pow2, sign_pow, Rational};
use crate::sheffer::pde::{residual, GfPde, TSeries};
use crate::sheffer::{gf_f, gf_phi, p_sequence, q_sequence_from, scaled_term, SequenceRoute};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Both sides reduce to `0 = 0` through empty sums.
    VacuousPass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// Every verdict was vacuous.
    Vacuous,
    Fail,
    /// `n_max` lies below the check's first valid `n`.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub n_range: [usize; 2],
    pub verdicts: Vec<Verdict>,
    pub counterexample: Option<Counterexample>,
    pub status: Status,
}

impl IdentityReport {
    /// True unless a substantive instance failed.
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

enum Outcome {
    Pass,
    Vacuous,
    Fail(String, String),
}

fn compare<T: PartialEq + Display>(lhs: T, rhs: T) -> Outcome {
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(lhs.to_string(), rhs.to_string())
    }
}

fn compare_or_vacuous<T: PartialEq + Display>(lhs: T, rhs: T, vacuous: bool) -> Outcome {
    match compare(lhs, rhs) {
        Outcome::Pass if vacuous => Outcome::Vacuous,
        o => o,
    }
}

/// Several sub-claims about one `n`; the first failure wins.
fn all_of(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut vacuous = true;
    for o in parts {
        match o {
            Outcome::Fail(..) => return o,
            Outcome::Pass => vacuous = false,
            Outcome::Vacuous => {}
        }
    }
    if vacuous {
        Outcome::Vacuous
    } else {
        Outcome::Pass
    }
}

fn truth(ok: bool, what: &str) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(what.to_string(), "true".into())
    }
}

/// Tables shared by the checks of one sweep.
pub struct Context {
    n_max: usize,
    p: Vec<IntPoly>,
    q: Vec<IntPoly>,
    oracles: OnceLock<(TruncatedBiseries, TruncatedBiseries)>,
    residuals: OnceLock<Vec<TSeries>>,
    routes: OnceLock<Result<(Vec<IntPoly>, Vec<IntPoly>)>>,
}

impl Context {
    /// Number of `p_n` a sweep to `n_max` reads (`p_{2n}` and `p_{n+1}` occur).
    pub fn p_len(n_max: usize) -> usize {
        2 * n_max + 2
    }

    pub fn new(n_max: usize) -> Result<Self> {
        let p = p_sequence(Self::p_len(n_max) - 1, SequenceRoute::DiffRecurrence)?;
        Self::with_p(n_max, p)
    }

    /// Uses the supplied table in place of the reference `p_n`, so perturbed
    /// sequences can be fed through the suite.
    pub fn with_p(n_max: usize, p: Vec<IntPoly>) -> Result<Self> {
        if p.len() < Self::p_len(n_max) {
            return Err(Error::InvalidArgument(format!(
                "need p_0..p_{} for n_max = {n_max}, got {} polynomials",
                Self::p_len(n_max) - 1,
                p.len()
            )));
        }
        let q = q_sequence_from(&p[..=n_max], SequenceRoute::DerivativeSum)?;
        Ok(Self { n_max, p, q, oracles: OnceLock::new(), residuals: OnceLock::new(), routes: OnceLock::new() })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn p(&self, n: usize) -> &IntPoly {
        &self.p[n]
    }

    pub fn q(&self, n: usize) -> &IntPoly {
        &self.q[n]
    }

    fn oracles(&self) -> &(TruncatedBiseries, TruncatedBiseries) {
        self.oracles.get_or_init(|| (gf_phi(self.n_max), gf_f(self.n_max)))
    }

    fn residuals(&self) -> &[TSeries] {
        self.residuals.get_or_init(|| GfPde::ALL.par_iter().map(|&eq| residual(eq, self.n_max)).collect())
    }

    fn routes(&self) -> Result<&(Vec<IntPoly>, Vec<IntPoly>)> {
        self.routes
            .get_or_init(|| {
                Ok((
                    p_sequence(self.n_max, SequenceRoute::SumRecurrence)?,
                    p_sequence(self.n_max, SequenceRoute::ExplicitCoeffs)?,
                ))
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

type Verifier = fn(&Context, usize) -> Result<Outcome>;

/// One registered identity.
pub struct IdentityCheck {
    pub id: &'static str,
    pub min_n: usize,
    pub description: &'static str,
    verify: Verifier,
}

fn c2(n: usize, k: usize) -> BigInt {
    binomial(n, k as i64)
}

fn c2_rat(n: usize, k: usize) -> Rational {
    Rational::from_integer(c2(n, k))
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n))
}

fn even_binomial_sum(n: usize) -> BigInt {
    (0..=n).map(|k| c2(2 * n, 2 * k)).sum()
}

/// `(2^{2k} - 1)/k · B_{2k}`, the tanh-series weight.
fn tanh_weight(k: usize) -> Rational {
    (pow2(2 * k as i64) - int(1)) / int(k as i64) * bernoulli_number(2 * k)
}

fn moment2(p: &IntPoly) -> Result<Rational> {
    exp_moment_div_x(p, &int(2))
}

fn moment1(p: &IntPoly) -> Result<Rational> {
    exp_moment_div_x(p, &int(1))
}

fn p_values(ctx: &Context, n: usize) -> Result<Outcome> {
    let p = ctx.p(n);
    let sign = BigInt::from(sign_pow(n as i64));
    Ok(all_of([
        compare(p.coeff(0), BigInt::zero()),
        compare(p.coeff(1), BigInt::from(-1)),
        // p''(0) = 2 a_2
        compare(p.coeff(2) * 2, (BigInt::one() << (2 * (n - 1))) * 2 - 2),
        compare(p.leading_coeff(), sign * double_factorial_odd(n as i64)?),
    ]))
}

fn diff_recurrence(ctx: &Context, n: usize) -> Result<Outcome> {
    let p = ctx.p(n);
    let x = IntPoly::x();
    let one_minus_2x = IntPoly::new(vec![BigInt::one(), BigInt::from(-2)]);
    let rhs = &(&(&x * &x) * &p.nth_derivative(2)) + &(&(&x * &one_minus_2x) * &p.derivative());
    let rhs = &rhs - &(&x * p);
    Ok(compare(ctx.p(n + 1).clone(), rhs))
}

fn derivative_recurrence(ctx: &Context, n: usize) -> Result<Outcome> {
    let rhs = (0..n).fold(IntPoly::zero(), |acc, k| &acc + &ctx.p(k).scale(&c2(2 * n, 2 * k)));
    Ok(compare(ctx.p(n).derivative(), -rhs))
}

fn sum_recurrence(ctx: &Context, n: usize) -> Result<Outcome> {
    let s = (0..=n).fold(IntPoly::zero(), |acc, k| &acc + &ctx.p(k).scale(&c2(2 * n + 1, 2 * k)));
    Ok(compare(ctx.p(n + 1).clone(), -s.shift(1)))
}

fn mixed_recurrence(ctx: &Context, n: usize) -> Result<Outcome> {
    let lhs = (0..=n).fold(IntPoly::zero(), |acc, k| &acc + &ctx.p(k).derivative().scale(&c2(2 * n + 1, 2 * k)));
    let rhs = (1..=n).fold(IntPoly::zero(), |acc, k| &acc + &ctx.p(k).scale(&c2(2 * n + 1, 2 * k - 1)));
    Ok(compare(lhs.shift(1), rhs))
}

fn explicit_coefficients(ctx: &Context, n: usize) -> Result<Outcome> {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    if n == 0 {
        coeffs[0] = BigInt::one();
    }
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = crate::sheffer::coeff_a(n, k)?;
    }
    Ok(compare(ctx.p(n).clone(), IntPoly::new(coeffs)))
}

fn route_agreement(ctx: &Context, n: usize) -> Result<Outcome> {
    let (sum, explicit) = ctx.routes()?;
    Ok(all_of([compare(ctx.p(n), &sum[n]), compare(ctx.p(n), &explicit[n])]))
}

fn generating_function(ctx: &Context, n: usize) -> Result<Outcome> {
    let (phi, f) = ctx.oracles();
    Ok(all_of([compare(ctx.p(n).clone(), scaled_term(phi, n)?), compare(ctx.q(n).clone(), scaled_term(f, n)?)]))
}

fn binomial_type(ctx: &Context, n: usize) -> Result<Outcome> {
    // Polynomial in x for each of n+1 rational y, enough to pin degree n in y.
    let mut parts = Vec::new();
    for j in 0..=n {
        let y = Rational::new(BigInt::from(2 * j as i64 - n as i64), BigInt::from(3));
        let lhs = ctx.p(n).to_rational().taylor_shift(&y);
        let rhs = (0..=n).fold(RatPoly::zero(), |acc, k| {
            let w = c2_rat(2 * n, 2 * k) * ctx.p(n - k).to_rational().eval(&y);
            &acc + &ctx.p(k).to_rational().scale(&w)
        });
        parts.push(compare(lhs, rhs));
    }
    Ok(all_of(parts))
}

fn b4n_from_square(ctx: &Context, n: usize) -> Result<Outcome> {
    let nn = n as i64;
    let m = moment2(&(ctx.p(n) * ctx.p(n)))?;
    Ok(compare(bernoulli_number(4 * n), int(2 * nn) / (int(1) - pow2(4 * nn)) * m))
}

fn square_moment(ctx: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(moment2(ctx.p(2 * n))?, moment2(&(ctx.p(n) * ctx.p(n)))?))
}

fn product_moment(ctx: &Context, n: usize) -> Result<Outcome> {
    let target = moment2(ctx.p(n))?;
    let mut parts = Vec::new();
    for a in 0..=n {
        parts.push(compare(moment2(&(ctx.p(a) * ctx.p(n - a)))?, target.clone()));
    }
    Ok(all_of(parts))
}

fn bernoulli_product_moment(ctx: &Context, n: usize) -> Result<Outcome> {
    let nn = n as i64;
    let scale = int(nn) / (int(1) - pow2(2 * nn));
    let target = bernoulli_number(2 * n);
    let mut parts = Vec::new();
    for a in 0..=n {
        parts.push(compare(&scale * moment2(&(ctx.p(a) * ctx.p(n - a)))?, target.clone()));
    }
    Ok(all_of(parts))
}

fn bernoulli_moment(ctx: &Context, n: usize) -> Result<Outcome> {
    let nn = n as i64;
    Ok(compare(bernoulli_number(2 * n), int(nn) / (int(1) - pow2(2 * nn)) * moment2(ctx.p(n))?))
}

fn euler_moment(ctx: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(Rational::from_integer(euler_number(2 * n)), exp_moment(ctx.p(n), &int(1))?))
}

fn q_convolution(ctx: &Context, n: usize) -> Result<Outcome> {
    let conv = (0..=n).fold(IntPoly::zero(), |acc, k| {
        &acc + &ctx.p(k).scale(&(euler_number(2 * (n - k)) * c2(2 * n, 2 * k)))
    });
    let inverse = (0..=n).fold(IntPoly::zero(), |acc, k| &acc + &ctx.q(k).scale(&c2(2 * n, 2 * k)));
    Ok(all_of([compare(ctx.q(n).clone(), conv), compare(ctx.p(n).clone(), inverse)]))
}

fn q_derivative(ctx: &Context, n: usize) -> Result<Outcome> {
    let rhs = (0..n).fold(IntPoly::zero(), |acc, k| &acc + &ctx.q(k).scale(&c2(2 * n, 2 * k)));
    Ok(compare(ctx.q(n).derivative(), -rhs))
}

fn q_values(ctx: &Context, n: usize) -> Result<Outcome> {
    let q = ctx.q(n);
    let e = euler_number(2 * n);
    Ok(all_of([
        compare(q.coeff(0), e.clone()),
        compare(q.coeff(1), e.clone()),
        compare(q.coeff(2) * 2, e + 1),
    ]))
}

fn tanh_expansion(ctx: &Context, n: usize) -> Result<Outcome> {
    let rhs = (1..=n).fold(RatPoly::zero(), |acc, k| {
        &acc + &ctx.p(n + 1 - k).to_rational().scale(&(c2_rat(2 * n, 2 * k - 1) * tanh_weight(k)))
    });
    Ok(compare(ctx.p(n).derivative().shift(1).to_rational(), rhs))
}

fn tanh_expansion_at_zero(_: &Context, n: usize) -> Result<Outcome> {
    let s: Rational = (1..=n).map(|k| c2_rat(2 * n, 2 * k - 1) * tanh_weight(k)).sum();
    Ok(compare(s, int(1)))
}

fn euler_bernoulli_convolution(_: &Context, n: usize) -> Result<Outcome> {
    let e = |m: usize| Rational::from_integer(euler_number(m));
    let lhs: Rational = (1..=n).map(|r| e(2 * r) / (fact(2 * r - 1) * fact(2 * (n - r + 1)))).sum();
    let mut rhs = Rational::zero();
    for r in 1..=n {
        for k in 1..=r {
            rhs += (pow2(2 * k as i64) - int(1)) * bernoulli_number(2 * k) * e(2 * (r - k + 1))
                / (fact(2 * k) * fact(2 * (n - r) + 1) * fact(2 * (r - k) + 1));
        }
    }
    Ok(compare(lhs, int(2) * rhs))
}

fn even_binomial_moment(ctx: &Context, n: usize) -> Result<Outcome> {
    let nn = n as i64;
    let lhs = bernoulli_number(2 * n) * Rational::from_integer(even_binomial_sum(n));
    Ok(compare(lhs, int(nn) / (int(1) - pow2(2 * nn)) * moment1(ctx.p(n))?))
}

fn even_binomial_second_derivative(ctx: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(even_binomial_sum(n), ctx.p(n).coeff(2) * 2 + 2))
}

fn second_derivative_recurrence(ctx: &Context, n: usize) -> Result<Outcome> {
    // Multiplied through by (2 - n), so n = 2 reads 0 = 0.
    let d2 = |k: usize| Rational::from_integer(ctx.p(k).coeff(2) * 2);
    let lhs = int(2 - n as i64) * d2(n);
    let rhs: Rational = (2..n).map(|k| c2_rat(2 * n, 2 * k - 1) * tanh_weight(n - k + 1) * d2(k)).sum();
    Ok(compare_or_vacuous(lhs, rhs, n <= 2))
}

fn even_binomial_closed_form(_: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(even_binomial_sum(n), BigInt::one() << (2 * n - 1)))
}

fn bernoulli_moment_rate_one(ctx: &Context, n: usize) -> Result<Outcome> {
    let nn = n as i64;
    Ok(compare(bernoulli_number(2 * n), int(2 * nn) / (pow2(2 * nn) - pow2(4 * nn)) * moment1(ctx.p(n))?))
}

fn bernoulli_quadratic(_: &Context, n: usize) -> Result<Outcome> {
    let nn = n as i64;
    let lhs: Rational = (2..n)
        .map(|k| {
            let j = n - k + 1;
            c2_rat(2 * n, 2 * k - 1) * (pow2(2 * j as i64) - int(1)) * (pow2(2 * (k as i64 - 1)) - int(1))
                / int(j as i64)
                * bernoulli_number(2 * j)
        })
        .sum();
    let rhs = (pow2(2 * (nn - 1)) - int(1)) * int(2 - nn);
    Ok(compare_or_vacuous(lhs, rhs, n <= 2))
}

fn explicit_bernoulli(_: &Context, n: usize) -> Result<Outcome> {
    let b = bernoulli_number(2 * n);
    Ok(all_of([
        compare(bernoulli_via_moment(n, BernoulliVariant::ExplicitRateTwo)?, b.clone()),
        compare(bernoulli_via_moment(n, BernoulliVariant::ExplicitRateOne)?, b),
    ]))
}

fn moment_rate_ratio(ctx: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(moment1(ctx.p(n))?, pow2(2 * n as i64 - 1) * moment2(ctx.p(n))?))
}

fn moment_euler_connection(ctx: &Context, n: usize) -> Result<Outcome> {
    let s: BigInt = (0..n).map(|k| c2(2 * n - 1, 2 * k) * euler_number(2 * k)).sum();
    Ok(compare(moment1(ctx.p(n))?, Rational::from_integer(-s)))
}

fn zeta_from_moment(ctx: &Context, n: usize) -> Result<Outcome> {
    let nn = n as i64;
    let z = int(sign_pow(nn)) * moment1(ctx.p(n))? / (int(2) * (pow2(2 * nn) - int(1)) * fact(2 * n - 1));
    Ok(compare(z, zeta_even_ratio(n, ZetaVariant::Bernoulli)?))
}

fn explicit_euler(_: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(euler_via(n, EulerVariant::Explicit)?, euler_number(2 * n)))
}

fn bernoulli_euler_connection(_: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(bernoulli_via_moment(n, BernoulliVariant::EulerConnection)?, bernoulli_number(2 * n)))
}

fn zeta_euler_sum(_: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(zeta_even_ratio(n, ZetaVariant::EulerSum)?, zeta_even_ratio(n, ZetaVariant::Bernoulli)?))
}

fn euler_recurrence(_: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(euler_via(n, EulerVariant::Recurrence)?, euler_number(2 * n)))
}

fn staudt_clausen(_: &Context, n: usize) -> Result<Outcome> {
    let r = staudt_clausen_check(n)?;
    Ok(all_of([
        truth(r.integrality_2_43, "2(2^{2n}-1) B_{2n} in Z"),
        truth(r.integrality_2_44, "2(2^{2n}-1)(2n-1)! ζ(2n)/π^{2n} in Z"),
        truth(r.fractional_part_ok, "B_{2n} + sum 1/p in Z"),
    ]))
}

fn theorem4(_: &Context, n: usize) -> Result<Outcome> {
    Ok(compare(theorem4_sum(n), Rational::zero()))
}

fn moment_integrality(ctx: &Context, n: usize) -> Result<Outcome> {
    let v = int(2 * n as i64) * moment2(ctx.p(n))?;
    Ok(if v.is_integer() { Outcome::Pass } else { Outcome::Fail(v.to_string(), "an integer".into()) })
}

fn odd_zeta(_: &Context, n: usize) -> Result<Outcome> {
    let r = verify_odd_zeta_identity(n)?;
    Ok(all_of([
        compare(&r.lhs, &r.rhs),
        truth(r.closed_forms_hold, "per-k closed forms"),
        truth(r.bracket_form_holds, "bracket regrouping"),
        if n == 0 { Outcome::Vacuous } else { truth(r.lower_brackets_vanish, "lower brackets vanish") },
    ]))
}

fn pde(eq: GfPde, ctx: &Context, n: usize) -> Result<Outcome> {
    let idx = GfPde::ALL.iter().position(|&e| e == eq).expect("registered equation");
    let r = &ctx.residuals()[idx];
    let mut parts = Vec::new();
    for power in [2 * n - 1, 2 * n] {
        if power <= r.valid() {
            parts.push(compare(r.coeff(power).clone(), RatPoly::zero()));
        }
    }
    Ok(all_of(parts))
}

macro_rules! pde_check {
    ($name:ident, $eq:expr) => {
        fn $name(ctx: &Context, n: usize) -> Result<Outcome> {
            pde($eq, ctx, n)
        }
    };
}

pde_check!(pde_phi_t, GfPde::PhiT);
pde_check!(pde_phi_x, GfPde::PhiX);
pde_check!(pde_phi_mixed, GfPde::PhiMixed);
pde_check!(pde_f_t, GfPde::FT);
pde_check!(pde_f_x, GfPde::FX);
pde_check!(pde_f_mixed, GfPde::FMixed);

macro_rules! registry {
    ($( $id:literal, $min:expr, $f:ident, $desc:literal; )*) => {
        const REGISTRY: &[IdentityCheck] = &[
            $( IdentityCheck { id: $id, min_n: $min, description: $desc, verify: $f }, )*
        ];
    };
}

// Sorted by id; `run_all` relies on it.
registry! {
    "corollary2", 1, moment_integrality, "2n ∫ e^{-2x} p_n dx/x is an integer";
    "eq1_13", 0, diff_recurrence, "p_{n+1} = x^2 p_n'' + x(1-2x) p_n' - x p_n";
    "eq1_15", 0, explicit_coefficients, "explicit coefficients a_{n,k} reproduce p_n";
    "eq1_18", 1, derivative_recurrence, "p_n' = -sum_{k<n} C(2n,2k) p_k";
    "eq1_20", 0, sum_recurrence, "p_{n+1} = -x sum_k C(2n+1,2k) p_k";
    "eq1_21", 1, mixed_recurrence, "x sum C(2n+1,2k) p_k' = sum C(2n+1,2k-1) p_k";
    "eq2_13", 1, bernoulli_moment, "B_{2n} = n/(1-2^{2n}) ∫ e^{-2x} p_n dx/x";
    "eq2_14", 1, b4n_from_square, "B_{4n} = 2n/(1-2^{4n}) ∫ e^{-2x} p_n^2 dx/x";
    "eq2_15", 1, square_moment, "∫ e^{-2x} p_{2n} dx/x = ∫ e^{-2x} p_n^2 dx/x";
    "eq2_16", 1, product_moment, "∫ e^{-2x} p_a p_b dx/x = ∫ e^{-2x} p_n dx/x for a + b = n";
    "eq2_17", 1, bernoulli_product_moment, "B_{2n} = n/(1-2^{2n}) ∫ e^{-2x} p_a p_b dx/x for a + b = n";
    "eq2_20", 0, euler_moment, "E_{2n} = ∫ e^{-x} p_n dx";
    "eq2_22_vs_2_28", 0, q_convolution, "q_n = sum E_{2(n-k)} C(2n,2k) p_k and p_n = sum C(2n,2k) q_k";
    "eq2_23", 0, binomial_type, "p_n(x+y) = sum C(2n,2k) p_k(x) p_{n-k}(y)";
    "eq2_24", 1, q_values, "q_n(0) = q_n'(0) = E_{2n}, q_n''(0) = E_{2n} + 1";
    "eq2_29", 1, q_derivative, "q_n' = -sum_{k<n} C(2n,2k) q_k";
    "eq2_30", 1, tanh_expansion, "x p_n' = sum C(2n,2k-1) (2^{2k}-1)/k B_{2k} p_{n+1-k}";
    "eq2_31", 1, tanh_expansion_at_zero, "sum C(2n,2k-1) (2^{2k}-1)/k B_{2k} = 1";
    "eq2_32", 1, euler_bernoulli_convolution, "Euler/Bernoulli convolution identity";
    "eq2_33", 1, even_binomial_moment, "B_{2n} sum C(2n,2k) = n/(1-2^{2n}) ∫ e^{-x} p_n dx/x";
    "eq2_34", 1, even_binomial_second_derivative, "sum C(2n,2k) = p_n''(0) + 2";
    "eq2_35", 1, second_derivative_recurrence, "(2-n) p_n''(0) = sum_{k=2}^{n-1} C(2n,2k-1) w_{n-k+1} p_k''(0)";
    "eq2_36", 1, even_binomial_closed_form, "sum C(2n,2k) = 2^{2n-1}";
    "eq2_37", 1, bernoulli_moment_rate_one, "B_{2n} = 2n/(2^{2n}-2^{4n}) ∫ e^{-x} p_n dx/x";
    "eq2_38", 1, bernoulli_quadratic, "sum_{k=2}^{n-1} ... B_{2(n-k+1)} = (2^{2(n-1)}-1)(2-n)";
    "eq2_39_2_40", 1, explicit_bernoulli, "explicit triple sums for B_{2n}";
    "eq2_41", 1, moment_rate_ratio, "∫ e^{-x} p_n dx/x = 2^{2n-1} ∫ e^{-2x} p_n dx/x";
    "eq2_41_euler", 1, moment_euler_connection, "∫ e^{-x} p_n dx/x = -sum C(2n-1,2k) E_{2k}";
    "eq2_42", 1, zeta_from_moment, "ζ(2n)/π^{2n} from ∫ e^{-x} p_n dx/x";
    "eq3_11_3_13", 0, odd_zeta, "odd zeta identity and vanishing brackets";
    "euler_explicit", 1, explicit_euler, "explicit triple sum for E_{2n}";
    "gf_oracle", 0, generating_function, "(2n)! [t^{2n}] Φ = p_n and (2n)! [t^{2n}] F = q_n";
    "gf_pde_1_22", 1, pde_phi_t, "Φ_t + x sinh t Φ = 0";
    "gf_pde_1_23", 1, pde_phi_x, "Φ_x + 2 sinh^2(t/2) Φ = 0";
    "gf_pde_1_24", 1, pde_phi_mixed, "x Φ_x = tanh(t/2) Φ_t";
    "gf_pde_2_25", 1, pde_f_t, "F_t + (x sinh t + tanh t) F = 0";
    "gf_pde_2_26", 1, pde_f_x, "F_x + 2 sinh^2(t/2) F = 0";
    "gf_pde_2_27", 1, pde_f_mixed, "x F_x = tanh(t/2) (F_t + F tanh t)";
    "p_values", 1, p_values, "p_n(0) = 0, p_n'(0) = -1, p_n''(0) = 2(2^{2(n-1)}-1), leading (-1)^n (2n-1)!!";
    "routes", 0, route_agreement, "sum-recurrence and explicit routes reproduce p_n";
    "thm1", 1, bernoulli_euler_connection, "B_{2n} from Euler numbers";
    "thm2", 1, euler_recurrence, "E_{2n} = 1 - sum 2^{2(n-k)-1} C(2n,2k) E_{2k}";
    "thm3", 1, staudt_clausen, "integrality and Von Staudt-Clausen";
    "thm4", 1, theorem4, "sum C(2n+1,2k)(2^{2k-1}-1) B_{2k} = 0";
    "zeta_euler_sum", 1, zeta_euler_sum, "ζ(2n)/π^{2n} from a finite sum of Euler numbers";
}

pub fn registry() -> &'static [IdentityCheck] {
    REGISTRY
}

pub fn check_ids() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|c| c.id)
}

pub fn find_check(id: &str) -> Result<&'static IdentityCheck> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

impl IdentityCheck {
    pub fn run(&self, ctx: &Context) -> Result<IdentityReport> {
        let n_max = ctx.n_max();
        let mut report = IdentityReport {
            id: self.id.to_string(),
            n_range: [self.min_n, n_max],
            verdicts: Vec::new(),
            counterexample: None,
            status: Status::Skipped,
        };
        if n_max < self.min_n {
            return Ok(report);
        }
        let mut substantive = false;
        for n in self.min_n..=n_max {
            let verdict = match (self.verify)(ctx, n)? {
                Outcome::Pass => {
                    substantive = true;
                    Verdict::Pass
                }
                Outcome::Vacuous => Verdict::VacuousPass,
                Outcome::Fail(lhs, rhs) => {
                    report.counterexample.get_or_insert(Counterexample { n, lhs, rhs });
                    Verdict::Fail
                }
            };
            report.verdicts.push(verdict);
        }
        report.status = if report.counterexample.is_some() {
            Status::Fail
        } else if substantive {
            Status::Pass
        } else {
            Status::Vacuous
        };
        Ok(report)
    }
}

pub fn run_check(id: &str, n_max: usize) -> Result<IdentityReport> {
    let check = find_check(id)?;
    if n_max < check.min_n.max(1) {
        return Err(Error::InvalidArgument(format!("{id} needs n_max >= {}", check.min_n.max(1))));
    }
    check.run(&Context::new(n_max)?)
}

/// Runs the named checks (all when `ids` is empty) against one context.
pub fn run_with(ctx: &Context, ids: &[&str]) -> Result<Vec<IdentityReport>> {
    let checks: Vec<&IdentityCheck> = if ids.is_empty() {
        REGISTRY.iter().collect()
    } else {
        ids.iter().map(|id| find_check(id)).collect::<Result<_>>()?
    };
    checks.par_iter().map(|c| c.run(ctx)).collect()
}

pub fn run_all(n_max: usize) -> Result<Vec<IdentityReport>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("run_all needs n_max >= 1".into()));
    }
    run_with(&Context::new(n_max)?, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_sorted_and_unique() {
        let ids: Vec<_> = check_ids().collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn spec_examples() {
        let r = run_check("eq2_31", 1).unwrap();
        assert_eq!(r.verdicts, vec![Verdict::Pass]);
        let r = run_check("eq2_38", 4).unwrap();
        assert_eq!(r.verdicts, vec![Verdict::VacuousPass, Verdict::VacuousPass, Verdict::Pass, Verdict::Pass]);
        let r = run_check("thm4", 1).unwrap();
        assert!(r.passed() && r.status == Status::Pass);
    }

    #[test]
    fn second_derivative_recurrence_endpoints() {
        let r = run_check("eq2_35", 6).unwrap();
        assert_eq!(&r.verdicts[..3], &[Verdict::VacuousPass, Verdict::VacuousPass, Verdict::Pass]);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(run_check("nosuch", 3), Err(Error::UnknownCheck(_))));
        let ctx = Context::new(2).unwrap();
        assert!(run_with(&ctx, &["thm4", "nosuch"]).is_err());
    }

    #[test]
    fn all_pass_small() {
        for r in run_all(6).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.id, r.counterexample);
            assert_eq!(r.verdicts.len(), 6 + 1 - r.n_range[0]);
        }
    }

    #[test]
    fn report_json_shape() {
        let r = run_check("thm4", 2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["id"], "thm4");
        assert_eq!(v["n_range"], serde_json::json!([1, 2]));
        assert_eq!(v["verdicts"], serde_json::json!(["pass", "pass"]));
        assert!(v["counterexample"].is_null());
    }

    #[test]
    fn perturbed_table_is_caught() {
        let mut p = p_sequence(Context::p_len(6) - 1, SequenceRoute::DiffRecurrence).unwrap();
        let mut c = p[3].coeffs().to_vec();
        c[2] += 1;
        p[3] = IntPoly::new(c);
        let ctx = Context::with_p(6, p).unwrap();
        let failing: Vec<_> = run_with(&ctx, &[]).unwrap().into_iter().filter(|r| !r.passed()).collect();
        assert!(failing.iter().any(|r| r.id == "eq1_18"));
        assert_eq!(failing.iter().find(|r| r.id == "eq1_18").unwrap().counterexample.as_ref().unwrap().n, 3);
    }
}
