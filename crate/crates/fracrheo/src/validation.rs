//! Self-checks run by `fracrheo validate`: identities, limits and
//! cross-checks that a correct build must satisfy.

use crate::convolution::{interconversion_residual, laplace_transform_kernel};
use crate::error::Result;
use crate::frac_calc::{gl_derivative, gl_weights, GlInput, SingularTerm};
use crate::models::*;
use crate::special_functions::{gamma, ml};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ml,
    Gl,
    Interconversion,
    Limits,
    Laplace,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "ml" => Self::Ml,
            "gl" => Self::Gl,
            "interconversion" => Self::Interconversion,
            "limits" => Self::Limits,
            "laplace" => Self::Laplace,
            "all" => Self::All,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(
        suite: &'static str,
        name: impl Into<String>,
        measured: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            suite,
            name: name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }

    fn holds(suite: &'static str, name: impl Into<String>, ok: bool) -> Self {
        Self {
            suite,
            name: name.into(),
            measured: if ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
            passed: ok,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite,
            "name": self.name,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "passed": self.passed,
        })
    }
}

/// |a − b| / max(1, |b|)
pub fn mixed_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Tight tolerance of the identity and limit checks; `tol` replaces it.
pub const DEFAULT_IDENTITY_TOL: f64 = 1e-10;

pub fn run_suite(suite: Suite, tol: Option<f64>) -> Result<Vec<Check>> {
    let tol = tol.unwrap_or(DEFAULT_IDENTITY_TOL);
    Ok(match suite {
        Suite::Ml => ml_suite(tol)?,
        Suite::Gl => gl_suite()?,
        Suite::Interconversion => interconversion_suite()?,
        Suite::Limits => limits_suite(tol)?,
        Suite::Laplace => laplace_suite()?,
        Suite::All => {
            let mut all = ml_suite(tol)?;
            all.extend(gl_suite()?);
            all.extend(interconversion_suite()?);
            all.extend(limits_suite(tol)?);
            all.extend(laplace_suite()?);
            all
        }
    })
}

/// Worst mixed error of four closed-form Mittag-Leffler identities, each over
/// `n` seeded random points.
pub fn ml_identity_errors(n: usize, seed: u64) -> [(&'static str, f64); 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 4];
    for _ in 0..n {
        let z = rng.random_range(-30.0..10.0);
        let x = rng.random_range(0.0..20.0f64);
        worst[0] = worst[0].max(mixed_error(ml(1.0, 1.0, z), z.exp()));
        worst[1] = worst[1].max(mixed_error(ml(2.0, 1.0, -x * x), x.cos()));
        let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
        worst[2] = worst[2].max(mixed_error(ml(2.0, 2.0, -x * x), sinc));
        worst[3] = worst[3].max(mixed_error(ml(1.0, 2.0, z), z.exp_m1() / z));
    }
    [
        ("E_{1,1}(z) = exp z", worst[0]),
        ("E_{2,1}(-x^2) = cos x", worst[1]),
        ("E_{2,2}(-x^2) = sin x / x", worst[2]),
        ("E_{1,2}(z) = (e^z - 1)/z", worst[3]),
    ]
}

fn ml_suite(tol: f64) -> Result<Vec<Check>> {
    let mut out: Vec<Check> = ml_identity_errors(200, 1)
        .iter()
        .map(|(name, e)| Check::at_most("ml", *name, *e, tol))
        .collect();
    out.extend(ml_reference_check()?);
    Ok(out)
}

#[cfg(feature = "oracles")]
fn ml_reference_check() -> Result<Option<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a = 2.0 - rng.random_range(0.0..2.0);
        let b = 3.0 - rng.random_range(0.0..3.0);
        let z = -rng.random_range(0.0..30.0);
        let reference =
            crate::oracles::ml_reference(crate::special_functions::MLArgs::new(a, b, z)?, 20)?;
        worst = worst.max(mixed_error(ml(a, b, z), reference));
    }
    Ok(Some(Check::at_most(
        "ml",
        "evaluator vs extended-precision reference (100 points)",
        worst,
        1e-11,
    )))
}

#[cfg(not(feature = "oracles"))]
fn ml_reference_check() -> Result<Option<Check>> {
    Ok(None)
}

fn gl_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let w = gl_weights(0.5, 4);
    out.push(Check::holds(
        "gl",
        "weights q=0.5 are 1, -0.5, -0.125, -0.0625",
        w == [1.0, -0.5, -0.125, -0.0625],
    ));
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let ramp = |t: f64| t;
    let step = |t: f64| if t >= 0.0 { 1.0 } else { 0.0 };
    let sq = |t: f64| t * t;
    let n = 1 << 14;
    let d = gl_derivative(GlInput::Callable(&ramp), 0.5, &[1.0], n)?[0];
    out.push(Check::at_most(
        "gl",
        "D^0.5 t at t=1",
        (d / (2.0 / sqrt_pi) - 1.0).abs(),
        1e-3,
    ));
    let d = gl_derivative(GlInput::Callable(&step), 0.5, &[1.0], n)?[0];
    out.push(Check::at_most(
        "gl",
        "D^0.5 U(t) at t=1",
        (d * sqrt_pi - 1.0).abs(),
        1e-3,
    ));
    let d = gl_derivative(GlInput::Callable(&sq), 1.0, &[3.0], n)?[0];
    out.push(Check::at_most(
        "gl",
        "D^1 t^2 at t=3",
        (d / 6.0 - 1.0).abs(),
        1e-3,
    ));
    let exact = 2.0 / gamma(2.5)?;
    let e1 = (gl_derivative(GlInput::Callable(&sq), 0.5, &[1.0], 1 << 10)?[0] - exact).abs();
    let e2 = (gl_derivative(GlInput::Callable(&sq), 0.5, &[1.0], 1 << 11)?[0] - exact).abs();
    out.push(Check {
        suite: "gl",
        name: "first-order convergence factor (t^2, q=0.5)".into(),
        measured: e1 / e2,
        tolerance: 1.8,
        passed: e1 / e2 >= 1.8,
    });
    #[cfg(feature = "oracles")]
    {
        let g = gl_derivative(GlInput::Callable(&sq), 0.5, &[2.0], 1024)?[0];
        let r = crate::oracles::gl_reference(sq, 0.5, 2.0, 1024)?;
        out.push(Check::at_most(
            "gl",
            "recurrence weights vs gamma-quotient reference (n=1024)",
            mixed_error(g, r),
            1e-12,
        ));
    }
    Ok(out)
}

/// Evaluation times of the interconversion residual: 0.1, 0.2, …, 10.
pub fn interconversion_times() -> Vec<f64> {
    (1..=100).map(|k| k as f64 / 10.0).collect()
}

fn interconversion_suite() -> Result<Vec<Check>> {
    let cases = [
        ("classical Maxwell", RheoModel::maxwell(1.0, 1.0)?, 1e-6),
        (
            "classical Kelvin-Voigt",
            RheoModel::kelvin_voigt(1.0, 1.0)?,
            1e-6,
        ),
        ("Scott-Blair q=0.5", RheoModel::scott_blair(1.0, 0.5)?, 5e-3),
        (
            "fractional Maxwell p=0.3 q=0.9",
            RheoModel::frac_maxwell(1.0, 0.3, 1.0, 0.9)?,
            1e-2,
        ),
        (
            "fractional Kelvin-Voigt p=0.2 q=0.8",
            RheoModel::frac_kelvin_voigt(1.0, 0.2, 1.0, 0.8)?,
            1e-2,
        ),
    ];
    let times = interconversion_times();
    let mut out = Vec::new();
    for (name, model, tol) in cases {
        let r1 = interconversion_residual(&model, 1e-3, &times)?;
        let r2 = interconversion_residual(&model, 5e-4, &times)?;
        out.push(Check::at_most(
            "interconversion",
            format!("{name}: residual at dt=1e-3"),
            r1,
            tol,
        ));
        let factor = r1 / r2;
        out.push(Check {
            suite: "interconversion",
            name: format!("{name}: refinement factor (or residual at roundoff)"),
            measured: factor,
            tolerance: 1.7,
            passed: factor >= 1.7 || r1 < 1e-12,
        });
    }
    Ok(out)
}

fn kernel_error<F: Fn(f64) -> f64>(k: &TimeResponseKernel, times: &[f64], exact: F) -> f64 {
    times
        .iter()
        .map(|&t| mixed_error(k.eval(t), exact(t)))
        .fold(0.0, f64::max)
}

fn same_singular(k: &TimeResponseKernel, want: &[(f64, f64)], tol: f64) -> bool {
    k.singular.len() == want.len()
        && k.singular
            .iter()
            .zip(want)
            .all(|(s, &(c, o)): (&SingularTerm, _)| {
                mixed_error(s.coefficient, c) <= tol && (s.order - o).abs() <= 1e-12
            })
}

/// Largest deviation of the five kernels of a Maxwell-type and a
/// Kelvin-Voigt-type model from the classical closed forms, including the
/// delta content, at 20 times. Returns (maxwell error, kelvin-voigt error).
pub fn classical_limit_errors(
    series: &RheoModel,
    parallel: &RheoModel,
    g: f64,
    eta: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    let lam = eta / g;
    let times: Vec<f64> = (1..=20).map(|k| 0.37 * k as f64).collect();
    let e = |t: f64| (-t / lam).exp();
    let mut mx = 0.0f64;
    let delta_ok = |ok: bool| if ok { 0.0 } else { f64::INFINITY };
    let k = memory_function(series)?;
    mx = mx
        .max(kernel_error(&k, &times, |t| -g / lam * e(t)))
        .max(delta_ok(same_singular(&k, &[(g, 0.0)], tol)));
    let k = relaxation_modulus(series)?;
    mx = mx
        .max(kernel_error(&k, &times, |t| g * e(t)))
        .max(delta_ok(k.singular.is_empty()));
    let k = impulse_fluidity(series)?;
    mx = mx
        .max(kernel_error(&k, &times, |_| 1.0 / eta))
        .max(delta_ok(same_singular(&k, &[(1.0 / g, 0.0)], tol)));
    let k = creep_compliance(series)?;
    mx = mx
        .max(kernel_error(&k, &times, |t| (1.0 + t / lam) / g))
        .max(delta_ok(k.singular.is_empty()));
    let k = impulse_strain_rate(series)?;
    mx = mx
        .max(kernel_error(&k, &times, |_| 0.0))
        .max(delta_ok(same_singular(
            &k,
            &[(1.0 / g, 1.0), (1.0 / eta, 0.0)],
            tol,
        )));

    let mut kv = 0.0f64;
    let k = memory_function(parallel)?;
    kv = kv
        .max(kernel_error(&k, &times, |_| 0.0))
        .max(delta_ok(same_singular(&k, &[(eta, 1.0), (g, 0.0)], tol)));
    let k = relaxation_modulus(parallel)?;
    kv = kv
        .max(kernel_error(&k, &times, |_| g))
        .max(delta_ok(same_singular(&k, &[(eta, 0.0)], tol)));
    let k = impulse_fluidity(parallel)?;
    kv = kv
        .max(kernel_error(&k, &times, |t| e(t) / eta))
        .max(delta_ok(k.singular.is_empty()));
    let k = creep_compliance(parallel)?;
    kv = kv
        .max(kernel_error(&k, &times, |t| (1.0 - e(t)) / g))
        .max(delta_ok(k.singular.is_empty()));
    let k = impulse_strain_rate(parallel)?;
    kv = kv
        .max(kernel_error(&k, &times, |t| -e(t) / (eta * lam)))
        .max(delta_ok(same_singular(&k, &[(1.0 / eta, 0.0)], tol)));
    Ok((mx, kv))
}

fn limits_suite(tol: f64) -> Result<Vec<Check>> {
    let (g, eta) = (2.0, 3.0);
    let mut out = Vec::new();
    let (m, k) = classical_limit_errors(
        &RheoModel::maxwell(g, eta)?,
        &RheoModel::kelvin_voigt(g, eta)?,
        g,
        eta,
        tol,
    )?;
    out.push(Check::at_most(
        "limits",
        "classical Maxwell kernels",
        m,
        tol,
    ));
    out.push(Check::at_most(
        "limits",
        "classical Kelvin-Voigt kernels",
        k,
        tol,
    ));
    let (m, k) = classical_limit_errors(
        &RheoModel::frac_maxwell(g, 0.0, eta, 1.0)?,
        &RheoModel::frac_kelvin_voigt(g, 0.0, eta, 1.0)?,
        g,
        eta,
        tol,
    )?;
    out.push(Check::at_most(
        "limits",
        "fractional Maxwell p=0 q=1 equals classical Maxwell",
        m,
        tol,
    ));
    out.push(Check::at_most(
        "limits",
        "fractional Kelvin-Voigt p=0 q=1 equals classical Kelvin-Voigt",
        k,
        tol,
    ));

    let (gi, mr) = (2.0f64, 0.5);
    let w = (gi / mr).sqrt();
    let times: Vec<f64> = (1..=20).map(|k| 0.29 * k as f64).collect();
    let series = RheoModel::frac_maxwell(gi, 0.0, mr, 2.0)?;
    let parallel = RheoModel::frac_kelvin_voigt(gi, 0.0, mr, 2.0)?;
    let gk = relaxation_modulus(&series)?;
    out.push(Check::at_most(
        "limits",
        "spring-inerter series: G = G cos(w t)",
        kernel_error(&gk, &times, |t| gi * (w * t).cos()),
        tol,
    ));
    let mk = memory_function(&series)?;
    out.push(Check::at_most(
        "limits",
        "spring-inerter series: M = G[delta - w sin(w t)]",
        kernel_error(&mk, &times, |t| -gi * w * (w * t).sin()).max(
            if same_singular(&mk, &[(gi, 0.0)], tol) {
                0.0
            } else {
                1.0
            },
        ),
        tol,
    ));
    let jk = creep_compliance(&parallel)?;
    out.push(Check::at_most(
        "limits",
        "spring-inerter parallel: J = (1 - cos w t)/G",
        kernel_error(&jk, &times, |t| (1.0 - (w * t).cos()) / gi),
        tol,
    ));
    let fk = impulse_fluidity(&parallel)?;
    out.push(Check::at_most(
        "limits",
        "spring-inerter parallel: phi = sin(w t)/(m w)",
        kernel_error(&fk, &times, |t| (w * t).sin() / (mr * w)),
        tol,
    ));
    let t0 = std::f64::consts::FRAC_PI_2 / w;
    let crossing = gk.eval(t0 - 1e-9 / w) > 0.0 && gk.eval(t0 + 1e-9 / w) < 0.0;
    out.push(Check::holds(
        "limits",
        "spring-inerter series: G changes sign at w t = pi/2 +- 1e-9",
        crossing,
    ));

    let mut worst = 0.0f64;
    for q in [0.3, 0.5, 1.5] {
        let sb = RheoModel::scott_blair(1.0, q)?;
        let (g, j) = (relaxation_modulus(&sb)?, creep_compliance(&sb)?);
        let law = sin_pi_over(q);
        for t in [0.5, 1.0, 2.0] {
            worst = worst.max(mixed_error(g.eval(t) * j.eval(t), law));
        }
    }
    out.push(Check::at_most(
        "limits",
        "Scott-Blair G(t) J(t) = sin(pi q)/(pi q)",
        worst,
        tol,
    ));
    Ok(out)
}

fn sin_pi_over(q: f64) -> f64 {
    crate::special_functions::sin_pi(q) / (std::f64::consts::PI * q)
}

/// Relative error of the numerical Laplace transform of G against G*(s)/s.
pub fn laplace_error(model: &RheoModel, s: f64) -> Result<f64> {
    let g = relaxation_modulus(model)?;
    let numeric = laplace_transform_kernel(&g, s, 40.0, 40_000, false)?;
    let exact = (model.transfer(Complex64::new(s, 0.0)) / s).re;
    Ok((numeric - exact).abs() / exact.abs())
}

fn laplace_suite() -> Result<Vec<Check>> {
    let cases = [
        ("Scott-Blair q=0.5", RheoModel::scott_blair(1.0, 0.5)?),
        (
            "fractional Maxwell p=0.2 q=0.7",
            RheoModel::frac_maxwell(1.0, 0.2, 1.0, 0.7)?,
        ),
        ("classical Kelvin-Voigt", RheoModel::kelvin_voigt(1.0, 1.0)?),
    ];
    let mut out = Vec::new();
    for (name, model) in cases {
        for s in [1.0, 2.0, 5.0] {
            out.push(Check::at_most(
                "laplace",
                format!("{name}, s={s}"),
                laplace_error(&model, s)?,
                1e-3,
            ));
        }
    }
    Ok(out)
}
