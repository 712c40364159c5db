use fracrheo::frac_calc::gl_weights;
use fracrheo::models::{creep_compliance, impulse_fluidity, RheoModel};
use fracrheo::oracles::{
    convolution_reference, gl_reference, gl_weight_gamma_quotient, gl_weights_exact, ml_reference,
    ml_reference_with_method, FixtureRecord, MlReferenceMethod, GL_REFERENCE_MAX_TERMS,
};
use fracrheo::special_functions::{ml, MLArgs};
use fracrheo::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::f64::consts::PI;

const FIXTURE: &str = include_str!("fixtures/ml_reference.txt");

fn fixture() -> Vec<FixtureRecord> {
    FIXTURE
        .lines()
        .enumerate()
        .filter_map(|(i, line)| FixtureRecord::parse_line(line, i + 1).unwrap())
        .collect()
}

#[test]
fn fixture_header_names_its_generator() {
    assert!(FIXTURE
        .lines()
        .take_while(|l| l.starts_with('#'))
        .any(|l| l.contains("--example gen_fixtures")));
    assert!(fixture().len() > 200);
}

#[test]
fn fixture_values_are_reproduced_by_the_oracle() {
    // Every seventh record keeps this affordable in an unoptimised build.
    for r in fixture().iter().step_by(7) {
        let (a, b, z) = (r.inputs[0], r.inputs[1], r.inputs[2]);
        let v = ml_reference(MLArgs::new(a, b, z).unwrap(), 30).unwrap();
        assert!(
            (v - r.value).abs() <= r.precision,
            "E({a}, {b}, {z}): {v} vs {}",
            r.value
        );
    }
}

#[test]
fn evaluator_agrees_with_the_fixture() {
    for r in fixture() {
        let (a, b, z) = (r.inputs[0], r.inputs[1], r.inputs[2]);
        let v = ml(a, b, z);
        assert!(
            (v - r.value).abs() <= 1e-11 * r.value.abs().max(1.0),
            "E({a}, {b}, {z}): {v} vs {}",
            r.value
        );
    }
}

#[test]
fn fixture_lines_round_trip() {
    for r in fixture() {
        let back = FixtureRecord::parse_line(&r.to_line(), 1).unwrap().unwrap();
        assert_eq!(back, r);
    }
    assert!(matches!(
        FixtureRecord::parse_line("mittag_leffler,1,x,3", 4),
        Err(Error::Parse { line: 4, .. })
    ));
}

#[test]
fn reference_method_selection() {
    let args = MLArgs::new(0.5, 1.0, -1.0).unwrap();
    let (v, method) = ml_reference_with_method(args, 25).unwrap();
    assert_eq!(method, MlReferenceMethod::ExtendedTaylor);
    // E_{1/2,1}(−1) = e·erfc(1)
    assert!((v - 0.427_583_576_155_807).abs() < 1e-15);
    let args = MLArgs::new(0.05, 1.0, -200.0).unwrap();
    let (v, method) = ml_reference_with_method(args, 20).unwrap();
    assert_eq!(method, MlReferenceMethod::CutIntegral);
    assert!((v - ml(0.05, 1.0, -200.0)).abs() < 1e-12);
    assert!(ml_reference(MLArgs::new(0.5, -0.5, -1.0).unwrap(), 20).is_err());
}

#[test]
fn weights_agree_across_constructions() {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let exact = gl_weights_exact(&half, 24);
    assert_eq!(
        exact[..4],
        [
            BigRational::from_integer(1.into()),
            BigRational::new((-1).into(), 2.into()),
            BigRational::new((-1).into(), 8.into()),
            BigRational::new((-1).into(), 16.into()),
        ]
    );
    let fast = gl_weights(0.5, 24);
    for (k, w) in exact.iter().enumerate() {
        let w = w.to_f64().unwrap();
        // Dyadic values are representable, so the recurrence must hit them exactly.
        if k < 4 {
            assert_eq!(fast[k], w);
        }
        assert!(
            (fast[k] - w).abs() <= 4.0 * f64::EPSILON * w.abs(),
            "k = {k}"
        );
        assert!((gl_weight_gamma_quotient(0.5, k) - w).abs() <= f64::EPSILON * w.abs());
    }
    assert_eq!(gl_weight_gamma_quotient(2.0, 1), -2.0);
    assert_eq!(gl_weight_gamma_quotient(2.0, 3), 0.0);
}

#[test]
fn gl_reference_examples() {
    let v = gl_reference(|t| t * t, 1.0, 2.0, 1024).unwrap();
    assert!((v - 4.0).abs() < 1e-2);
    let v = gl_reference(|t| if t >= 0.0 { 1.0 } else { 0.0 }, 0.5, 1.0, 4096).unwrap();
    assert!((v - 1.0 / PI.sqrt()).abs() < 1e-2);
    assert!(gl_reference(|t| t, 0.5, 1.0, GL_REFERENCE_MAX_TERMS + 1).is_err());
    assert!(gl_reference(|t| t, -0.5, 1.0, 16).is_err());
}

#[test]
fn convolution_reference_examples() {
    // Maxwell: J(t) = 1/G + ∫₀ᵗ φ_reg(u) du with φ_reg = 1/η.
    let (g, eta) = (2.0, 3.0);
    let model = RheoModel::maxwell(g, eta).unwrap();
    let phi = impulse_fluidity(&model).unwrap();
    let j = creep_compliance(&model).unwrap();
    for t in [0.5, 1.0, 4.0] {
        let regular = convolution_reference(|u| phi.eval(u), |_| 1.0, t, 10_000).unwrap();
        assert!((1.0 / g + regular - j.eval(t)).abs() < 1e-3);
    }
    let half =
        convolution_reference(|u: f64| u.powf(-0.5) / PI.sqrt(), |_| 1.0, 1.0, 20_000).unwrap();
    assert!((half - 2.0 / PI.sqrt()).abs() < 1e-8);
    assert_eq!(convolution_reference(|u| u, |_| 1.0, 0.0, 10).unwrap(), 0.0);
    assert!(matches!(
        convolution_reference(|_| f64::INFINITY, |_| 1.0, 1.0, 10),
        Err(Error::Divergence(_))
    ));
}
