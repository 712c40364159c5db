use fracrheo::oracles::ml_reference;
use fracrheo::special_functions::{
    gamma, mittag_leffler, ml, ml_recurrence_shift, recip_gamma, MLArgs,
};
use fracrheo::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn gamma_examples() {
    assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-14);
    assert_eq!(gamma(5.0).unwrap(), 24.0);
    assert!(rel(gamma(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
    for x in [0.0, -1.0, -2.0, -17.0] {
        assert!(matches!(gamma(x), Err(Error::Pole(_))), "x = {x}");
    }
    assert!(matches!(gamma(172.0), Err(Error::Overflow(_))));
    // 169! is representable; check it against the factorial recursion.
    let f = (1..=169).fold(1.0f64, |acc, k| acc * k as f64);
    assert!(rel(gamma(170.0).unwrap(), f) < 1e-12);
}

#[test]
fn recip_gamma_examples() {
    assert_eq!(recip_gamma(-2.0), 0.0);
    assert_eq!(recip_gamma(0.0), 0.0);
    assert_eq!(recip_gamma(1.0), 1.0);
    assert!(rel(recip_gamma(0.5), 0.564_189_583_547_756_3) < 1e-15);
}

#[test]
fn mittag_leffler_examples() {
    let e = |a, b, z| mittag_leffler(MLArgs::new(a, b, z).unwrap(), 1e-14).unwrap();
    assert!(rel(e(1.0, 1.0, -1.0), (-1.0f64).exp()) < 1e-14);
    assert!(e(2.0, 1.0, -(PI / 2.0).powi(2)).abs() < 1e-14);
    assert!(rel(e(1.0, 2.0, -1.0), 1.0 - (-1.0f64).exp()) < 1e-14);
    assert!(rel(e(1.0, 1.0, -5.0), (-5.0f64).exp()) < 1e-14);
    assert!((e(2.0, 2.0, -9.0) - 3.0f64.sin() / 3.0).abs() < 1e-14);
    let reference = ml_reference(MLArgs::new(0.5, 0.5, -1.0).unwrap(), 30).unwrap();
    assert!(rel(e(0.5, 0.5, -1.0), reference) < 1e-11);
}

#[test]
fn long_asymptotic_tail_stays_finite() {
    // Near α = 1 the asymptotic terms keep shrinking past the point where
    // 1/Γ(β − αk) alone overflows.
    let (alpha, z) = (0.9509814304778597, -611.4560544793152);
    for beta in [alpha, 1.0, 1.0 + alpha] {
        let args = MLArgs::new(alpha, beta, z).unwrap();
        let v = mittag_leffler(args, 1e-14).unwrap();
        let r = ml_reference(args, 30).unwrap();
        assert!(rel(v, r) < 1e-11, "beta = {beta}: {v} vs {r}");
    }
}

#[test]
fn invalid_arguments_are_rejected() {
    assert!(MLArgs::new(0.0, 1.0, -1.0).is_err());
    assert!(MLArgs::new(-1.0, 1.0, -1.0).is_err());
    assert!(MLArgs::new(1.0, f64::NAN, -1.0).is_err());
    let args = MLArgs::new(1.0, 1.0, -1.0).unwrap();
    assert!(mittag_leffler(args, 0.0).is_err());
}

#[test]
fn non_positive_beta_goes_through_the_recurrence() {
    // E_{1,0}(z) = z e^z and E_{1,-1}(z) = z² e^z follow from the recurrence.
    for z in [-0.5, -3.0, -12.0] {
        let zz: f64 = z;
        assert!((ml(1.0, 0.0, z) - zz * zz.exp()).abs() < 1e-13);
        assert!((ml(1.0, -1.0, z) - zz * zz * zz.exp()).abs() < 1e-13);
    }
}

#[test]
fn recurrence_shift_examples() {
    let s = ml_recurrence_shift(MLArgs::new(1.0, 1.0, -1.0).unwrap());
    assert_eq!(s.leading, 1.0);
    assert_eq!(s.factor, -1.0);
    assert_eq!((s.shifted.alpha, s.shifted.beta), (1.0, 2.0));
    let back = s.leading + s.factor * ml(1.0, 2.0, -1.0);
    assert!(rel(back, (-1.0f64).exp()) < 1e-15);

    let s = ml_recurrence_shift(MLArgs::new(0.5, -0.5, -2.0).unwrap());
    assert!(rel(s.leading, -0.282_094_791_773_878_14) < 1e-14);
    assert_eq!(
        (s.shifted.alpha, s.shifted.beta, s.shifted.z),
        (0.5, 0.0, -2.0)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn value_at_origin_is_reciprocal_gamma(a in 0.01f64..=2.0, b in 0.01f64..=3.0) {
        prop_assert!((ml(a, b, 0.0) - recip_gamma(b)).abs() <= 1e-15 * recip_gamma(b).abs().max(1.0));
    }

    #[test]
    fn exponential_identity(z in -30.0f64..=5.0) {
        prop_assert!(rel(ml(1.0, 1.0, z), z.exp()) <= 1e-10);
    }

    #[test]
    fn trigonometric_identities(x in 1e-6f64..=20.0) {
        prop_assert!((ml(2.0, 1.0, -x * x) - x.cos()).abs() <= 1e-10);
        prop_assert!((ml(2.0, 2.0, -x * x) - x.sin() / x).abs() <= 1e-10);
    }

    #[test]
    fn shifted_exponential_identity(z in -30.0f64..=5.0) {
        prop_assume!(z != 0.0);
        prop_assert!(rel(ml(1.0, 2.0, z), z.exp_m1() / z) <= 1e-10);
    }

    #[test]
    fn recurrence_residual(a in 0.01f64..=2.0, b in -2.0f64..=3.0, z in -20.0f64..=0.0) {
        let residual = ml(a, b, z) - recip_gamma(b) - z * ml(a, a + b, z);
        prop_assert!(residual.abs() <= 1e-11, "residual {residual}");
    }

    #[test]
    fn reciprocal_gamma_inverts_gamma(x in -30.0f64..=170.0) {
        prop_assume!((x - x.round()).abs() > 1e-6 || x > 0.0);
        let g = gamma(x).unwrap();
        prop_assert!((recip_gamma(x) * g - 1.0).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_round_trip_against_reference(a in 0.05f64..=2.0, b in 0.05f64..=3.0, z in -20.0f64..=0.0) {
        let split = ml_recurrence_shift(MLArgs::new(a, b, z).unwrap());
        let shifted = split.shifted;
        let recombined = split.leading + split.factor * ml(shifted.alpha, shifted.beta, shifted.z);
        let reference = ml_reference(MLArgs::new(a, b, z).unwrap(), 25).unwrap();
        prop_assert!((recombined - reference).abs() <= 1e-12 * reference.abs().max(1.0));
    }
}
