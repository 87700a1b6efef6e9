use mevreg_core::eisenstein::EllipticParam;
use mevreg_core::mev::{lambda_mev, lambda_single_closed};
use mevreg_core::regulator::{goncharov_mev, regulator_report, validate_pair};
use mevreg_core::series::default_cutoff;
use mevreg_core::Error;
use std::f64::consts::PI;

fn p(a: i64, b: i64, d: i64) -> EllipticParam {
    EllipticParam::from_ints(a, b, d)
}

#[test]
fn single_value_at_quarter() {
    let v = lambda_mev(&[p(1, 1, 4)], default_cutoff()).unwrap();
    assert!((v.value.im - PI / 8.0).abs() < 1e-12);
    assert!((v.value - lambda_single_closed(p(1, 1, 4)).unwrap()).norm() < 1e-12);
    assert!(v.truncation_bound < 1e-20);
}

#[test]
fn boundary_errors_name_the_hypothesis() {
    match validate_pair(p(1, 0, 5), p(2, 1, 5)) {
        Err(Error::Domain(msg)) => assert!(msg.contains("non-zero")),
        other => panic!("{other:?}"),
    }
    assert!(lambda_mev(&[], default_cutoff()).is_err());
    assert!(lambda_mev(&[EllipticParam::zero()], default_cutoff()).is_err());
}

#[test]
fn regulator_report_is_consistent() {
    let (a, b) = (p(1, 2, 7), p(3, 1, 7));
    let r = regulator_report(a, b, None, default_cutoff()).unwrap();
    assert_eq!(r.level, 7);
    assert!(r.residual_thm1 < 1e-7 && r.residual_thm2 < 1e-7);
    assert!(r.g_mev.abs() > 1e-3);
    assert_eq!(r.g_mev, goncharov_mev(a, b, default_cutoff()).unwrap().value);
}
