//! Constants and special functions needed by the numeric checks.

use rug::ops::Pow;
use rug::Float;

use super::{format_float, integrate, integrate_pieces, Goal, Interval, NumReal, Precision};
use crate::error::{Error, Result};

/// Order of `K_ν`: real `ν`, or purely imaginary `ν = iτ`.
#[derive(Clone, Debug)]
pub enum BesselOrder {
    Real(Float),
    Imaginary(Float),
}

/// Sum of the alternating series `sum_{k>=0} (-1)^k a_k` for a totally
/// monotone `a_k`, accelerated with the Cohen–Villegas–Zagier weights.
/// The error is at most `2 a_0 / (3+√8)^n`.
fn alternating_sum(a: impl Fn(u64) -> Float, prec: Precision) -> NumReal {
    let bits = prec.bits();
    let rate = 3.0 + 8f64.sqrt();
    let n = ((prec.digits() as f64 + 12.0) * std::f64::consts::LN_10 / rate.ln()).ceil() as u64;
    let mut d = Float::with_val(bits, 8).sqrt() + 3u32;
    d = d.pow(n);
    d = (Float::with_val(bits, 1u32 / &d) + &d) / 2u32;
    let mut b = Float::with_val(bits, -1);
    let mut c = Float::with_val(bits, -&d);
    let mut s = Float::new(bits);
    for k in 0..n {
        c = Float::with_val(bits, &b - &c);
        s += Float::with_val(bits, &c * a(k));
        let num = (k as f64 + n as f64) * (k as f64 - n as f64);
        b = b * num / ((k as f64 + 0.5) * (k as f64 + 1.0));
    }
    let value = s / d;
    let a0 = a(0).abs();
    let err = a0 * 2u32 / Float::with_val(bits, rate).pow(n);
    NumReal::new(value, err, prec)
}

/// Catalan's constant `G = sum (-1)^k/(2k+1)^2`.
pub fn const_catalan(prec: Precision) -> NumReal {
    let bits = prec.bits();
    alternating_sum(|k| Float::with_val(bits, 2 * k + 1).square().recip(), prec)
}

/// `ζ(s)` for real `s > 1`, through the alternating eta series.
pub fn const_zeta(s: &Float, prec: Precision) -> Result<NumReal> {
    if *s <= 1 {
        return Err(Error::InvalidArgument(format!("ζ(s) needs s > 1, got {}", format_float(s, 10))));
    }
    let bits = prec.bits();
    let eta = alternating_sum(|k| Float::with_val(bits, k + 1).pow(Float::with_val(bits, -s)), prec);
    // ζ = η / (1 - 2^{1-s})
    let factor = Float::with_val(bits, 1) - Float::with_val(bits, 2).pow(Float::with_val(bits, 1 - s));
    Ok(eta.scale(&factor.recip()))
}

/// `ζ(2m+3)`.
pub fn const_zeta_odd(m: u32, prec: Precision) -> NumReal {
    const_zeta(&prec.float(2.0 * m as f64 + 3.0), prec).expect("odd argument >= 3")
}

/// `K_ν(x) = ∫_0^∞ e^{-x cosh u} cosh(νu) du` (or `cos(τu)` for `ν = iτ`),
/// truncated where the integrand drops below the working precision.
pub fn bessel_k(order: &BesselOrder, x: &Float, prec: Precision) -> Result<NumReal> {
    bessel_k_goal(order, x, Goal::full(prec))
}

pub(crate) fn bessel_k_goal(order: &BesselOrder, x: &Float, goal: Goal) -> Result<NumReal> {
    if *x <= 0 {
        return Err(Error::InvalidArgument(format!("K_ν(x) needs x > 0, got {}", format_float(x, 10))));
    }
    let prec = goal.prec;
    let bits = prec.bits();
    let budget = (prec.digits() as f64 + 5.0) * std::f64::consts::LN_10;
    let xf = x.to_f64();
    let growth = match order {
        BesselOrder::Real(nu) => nu.to_f64().abs(),
        BesselOrder::Imaginary(_) => 0.0,
    };
    // x cosh u - |ν| u >= budget
    let mut u_max = (budget / xf).max(1.0).acosh();
    for _ in 0..4 {
        u_max = ((budget + growth * u_max) / xf).max(1.0).acosh();
    }
    u_max += 1.0;
    let upper = prec.float(u_max);
    let zero = Float::new(bits);
    let x = x.clone();
    match order {
        BesselOrder::Real(nu) => {
            let nu = nu.clone();
            integrate(
                move |u| {
                    let e = Float::with_val(bits, -Float::with_val(bits, u.cosh_ref()) * &x).exp();
                    Ok(e * Float::with_val(bits, u * &nu).cosh())
                },
                &Interval::finite(&zero, &upper),
                goal,
            )
        }
        BesselOrder::Imaginary(tau) => {
            let tau = tau.clone();
            // one piece per period keeps the oscillation resolved
            let pieces = ((u_max * tau.to_f64().abs()) / (2.0 * std::f64::consts::PI)).ceil().max(1.0) as u32;
            let points: Vec<Float> = (0..=pieces).map(|i| Float::with_val(bits, &upper * i) / pieces).collect();
            integrate_pieces(
                move |u| {
                    let e = Float::with_val(bits, -Float::with_val(bits, u.cosh_ref()) * &x).exp();
                    Ok(e * Float::with_val(bits, u * &tau).cos())
                },
                &points,
                goal,
            )
        }
    }
}

/// `K_ν(x) = ½ (x/2)^ν ∫_0^∞ e^{-t - x²/(4t)} t^{-ν-1} dt` for real `ν`; an
/// independent route used to validate [`bessel_k`].
pub fn bessel_k_alt(nu: &Float, x: &Float, prec: Precision) -> Result<NumReal> {
    if *x <= 0 {
        return Err(Error::InvalidArgument(format!("K_ν(x) needs x > 0, got {}", format_float(x, 10))));
    }
    let bits = prec.bits();
    let q = Float::with_val(bits, x.square_ref()) / 4u32;
    let exponent = Float::with_val(bits, -nu) - 1u32;
    let v = integrate(
        |t| {
            let e = (-Float::with_val(bits, t + Float::with_val(bits, &q / t))).exp();
            Ok(e * Float::with_val(bits, t.pow(&exponent)))
        },
        &Interval::From(Float::new(bits)),
        Goal::full(prec),
    )?;
    let factor = Float::with_val(bits, x / 2u32).pow(nu) / 2u32;
    Ok(v.scale(&factor))
}

fn half_pi_interval(prec: Precision) -> Interval {
    Interval::finite(&Float::new(prec.bits()), &(prec.pi() / 2u32))
}

/// `I_n = ∫_0^{π/2} t^n / sin t dt`, `n >= 1`.
pub fn moment_i(n: u32, prec: Precision) -> Result<NumReal> {
    if n < 1 {
        return Err(Error::InvalidArgument("I_n needs n >= 1".into()));
    }
    let bits = prec.bits();
    integrate(|t| Ok(Float::with_val(bits, t.pow(n)) / Float::with_val(bits, t.sin_ref())), &half_pi_interval(prec), Goal::full(prec))
}

/// `M_n = ∫_0^{π/2} t^n / sin² t dt`, `n >= 2`.
pub fn moment_m(n: u32, prec: Precision) -> Result<NumReal> {
    if n < 2 {
        return Err(Error::InvalidArgument("M_n needs n >= 2".into()));
    }
    let bits = prec.bits();
    integrate(
        |t| Ok(Float::with_val(bits, t.pow(n)) / Float::with_val(bits, t.sin_ref()).square()),
        &half_pi_interval(prec),
        Goal::full(prec),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    fn p30() -> Precision {
        Precision::new(30).unwrap()
    }

    fn rel(a: &Float, b: &Float) -> f64 {
        (Float::with_val(a.prec(), a - b) / b).abs().to_f64()
    }

    #[test]
    fn catalan_and_zeta_match_mpfr() {
        let prec = p30();
        let bits = prec.bits();
        let g = const_catalan(prec);
        assert!(rel(&g.value, &Float::with_val(bits, Constant::Catalan)) < 1e-35);
        assert!(g.err < prec.eps(30.0));
        for s in [3u32, 5, 7] {
            let z = const_zeta(&prec.float(s), prec).unwrap();
            assert!(rel(&z.value, &Float::with_val(bits, Float::zeta_u(s))) < 1e-35, "ζ({s})");
        }
        let z = const_zeta(&prec.float(2.5), prec).unwrap();
        let expect = Float::with_val(bits, prec.float(2.5).zeta());
        assert!(rel(&z.value, &expect) < 1e-35);
        assert!(const_zeta(&prec.float(1.0), prec).is_err());
        assert!(format_float(&const_zeta_odd(1, prec).value, 17).starts_with("1.0369277551433699"));
    }

    #[test]
    fn bessel_reference_values() {
        let prec = p30();
        let k0 = bessel_k(&BesselOrder::Real(prec.float(0.0)), &prec.float(1.0), prec).unwrap();
        assert!(format_float(&k0.value, 11).starts_with("4.2102443824"), "{k0}");
        let half = bessel_k(&BesselOrder::Real(prec.float(0.5)), &prec.float(1.0), prec).unwrap();
        let closed = Float::with_val(prec.bits(), prec.pi() / 2u32).sqrt() * Float::with_val(prec.bits(), -1).exp();
        assert!(rel(&half.value, &closed) < 1e-29);
        assert!(bessel_k(&BesselOrder::Real(prec.float(0.0)), &prec.float(0.0), prec).is_err());
    }

    #[test]
    fn bessel_imaginary_order_is_stable_under_truncation() {
        // Same value with a coarser and a finer working precision (different
        // truncation points and node sets).
        let a = bessel_k(&BesselOrder::Imaginary(p30().float(1.0)), &p30().float(1.0), p30()).unwrap();
        let p40 = Precision::new(40).unwrap();
        let b = bessel_k(&BesselOrder::Imaginary(p40.float(1.0)), &p40.float(1.0), p40).unwrap();
        assert!(rel(&a.value, &Float::with_val(p30().bits(), &b.value)) < 1e-28);
    }

    #[test]
    fn integral_representations_agree() {
        let prec = p30();
        for nu in [0.0, 0.5, 1.0] {
            for x in [0.5, 2.0] {
                let a = bessel_k(&BesselOrder::Real(prec.float(nu)), &prec.float(x), prec).unwrap();
                let b = bessel_k_alt(&prec.float(nu), &prec.float(x), prec).unwrap();
                assert!(rel(&a.value, &b.value) < 1e-27, "ν={nu} x={x}");
            }
        }
    }

    #[test]
    fn moment_values() {
        let prec = p30();
        let bits = prec.bits();
        let i1 = moment_i(1, prec).unwrap();
        let g2 = Float::with_val(bits, Constant::Catalan) * 2u32;
        assert!(rel(&i1.value, &g2) < 1e-29);
        let m2 = moment_m(2, prec).unwrap();
        let ln2 = Float::with_val(bits, Constant::Log2);
        assert!(rel(&m2.value, &(prec.pi() * &ln2)) < 1e-29);
        assert!(format_float(&m2.value, 11).starts_with("2.1775860903"));
        let m4 = moment_m(4, prec).unwrap();
        let pi = prec.pi();
        let expect = Float::with_val(bits, pi.clone().pow(3u32)) / 2u32 * &ln2
            - pi * 9u32 / 4u32 * Float::with_val(bits, Float::zeta_u(3));
        assert!(rel(&m4.value, &expect) < 1e-28);
        assert!(format_float(&m4.value, 11).starts_with("2.2491170739"));
        assert!(moment_i(0, prec).is_err() && moment_m(1, prec).is_err());
    }

    #[test]
    fn moments_survive_reflection() {
        // t -> π/2 - u
        let prec = p30();
        let bits = prec.bits();
        let hp = prec.pi() / 2u32;
        for n in 1..=4u32 {
            let direct = moment_i(n, prec).unwrap();
            let reflected = integrate(
                |u| Ok(Float::with_val(bits, &hp - u).pow(n) / Float::with_val(bits, u.cos_ref())),
                &half_pi_interval(prec),
                Goal::full(prec),
            )
            .unwrap();
            assert!(rel(&direct.value, &reflected.value) < 1e-28, "I_{n}");
        }
    }
}
