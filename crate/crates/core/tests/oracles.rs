//! Known values, checked through the public API only.

use num::BigInt;
use shefferzeta::bernoulli_euler::{
    bernoulli_number, euler_number, number_table, zeta_even_ratio, NumberKind, ZetaVariant,
};
use shefferzeta::identities::{self, Context, Status};
use shefferzeta::poly::int_poly;
use shefferzeta::quadrature::{self, moment_i, moment_m, verify_numeric, Params, Precision};
use shefferzeta::rational::{parse_rational, rat};
use shefferzeta::sheffer::{gen_p, gen_q, SequenceRoute};
use shefferzeta::Error;

#[test]
fn first_polynomials() {
    assert_eq!(gen_p(3, SequenceRoute::SumRecurrence).unwrap(), int_poly(&[0, -1, 15, -15]));
    assert_eq!(gen_p(3, SequenceRoute::ExplicitCoeffs).unwrap().to_string(), "-15x^3 + 15x^2 - x");
    assert_eq!(gen_q(3, SequenceRoute::InverseRecurrence).unwrap(), int_poly(&[-61, -61, -30, -15]));
    // q_n(0) = E_{2n}
    for n in 0..12 {
        assert_eq!(gen_q(n, SequenceRoute::EulerConvolution).unwrap().coeff(0), euler_number(2 * n));
    }
}

#[test]
fn classical_numbers() {
    assert_eq!(bernoulli_number(20), rat(-174611, 330));
    assert_eq!(euler_number(12), BigInt::from(2702765));
    assert_eq!(zeta_even_ratio(1, ZetaVariant::EulerSum).unwrap(), rat(1, 6));
    assert_eq!(zeta_even_ratio(4, ZetaVariant::Moment).unwrap(), rat(1, 9450));
    assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
}

#[test]
fn tables_cross_check() {
    for kind in NumberKind::ALL {
        let rows = number_table(kind, 24, None, true).unwrap();
        assert!(rows.iter().all(|r| r.agree == Some(true)), "{kind}");
    }
}

#[test]
fn exact_suite_reports() {
    let reports = identities::run_all(12).unwrap();
    assert_eq!(reports.len(), identities::check_ids().count());
    assert!(reports.iter().all(|r| r.status == Status::Pass), "{reports:#?}");
    assert!(matches!(identities::run_check("eq9_99", 5), Err(Error::UnknownCheck(_))));
    assert!(identities::run_all(0).is_err());
}

#[test]
fn perturbed_table_is_caught() {
    let mut p = shefferzeta::sheffer::p_sequence(Context::p_len(6) - 1, SequenceRoute::DiffRecurrence).unwrap();
    p[3] = int_poly(&[0, -1, 15, -14]);
    let ctx = Context::with_p(6, p).unwrap();
    let reports = identities::run_with(&ctx, &["p_values", "eq2_33", "routes"]).unwrap();
    assert!(reports.iter().all(|r| r.status == Status::Fail));
    let c = reports[0].counterexample.as_ref().unwrap();
    assert_eq!(c.n, 3);
}

#[test]
fn moment_integrals() {
    let prec = Precision::new(30).unwrap();
    let g = quadrature::const_catalan(prec);
    let i1 = moment_i(1, prec).unwrap();
    assert!(i1.sub(&g.scale(&prec.float(2))).value.abs() < 1e-28);
    // corrected decimals (see README)
    assert!(moment_i(2, prec).unwrap().to_string().starts_with("1.5479824021"));
    assert!(moment_m(3, prec).unwrap().to_string().starts_with("1.9754169770"));
    assert!(moment_m(4, prec).unwrap().to_string().starts_with("2.2491170739"));
}

#[test]
fn numeric_check_with_explicit_params() {
    let prec = Precision::new(30).unwrap();
    let params = Params { n: Some(3), point: None };
    let rs = verify_numeric("eq3_7", &params, prec, None).unwrap();
    assert!(!rs.is_empty() && rs.iter().all(|r| r.pass), "{rs:#?}");
    assert!(matches!(verify_numeric("nope", &Params::default(), prec, None), Err(Error::UnknownCheck(_))));
    assert!(verify_numeric("eq3_7", &Params::default(), prec, Some(-1.0)).is_err());
    assert!(Precision::new(5).is_err());
}
