//! Boltzmann superposition on uniform grids, the stress/strain interconversion
//! check and a numerical Laplace transform.
//!
//! Regular kernel parts are handled by product integration: the input is
//! piecewise linear (or its rate piecewise constant) and the kernel enters only
//! through its exact first and second antiderivatives, so weakly singular
//! kernels like t^{−q} lose no accuracy at the origin. Delta derivatives of
//! integer order act on the input as finite differences; those of fractional
//! order go through the Grünwald-Letnikov derivative.

use crate::error::{Error, Result};
use crate::frac_calc::{gl_derivative_native, ml_frac_integral, MLTerm, SingularTerm};
use crate::models::{
    creep_compliance, impulse_fluidity, impulse_strain_rate, memory_function, relaxation_modulus,
};
use crate::models::{RheoModel, TimeResponseKernel};
use crate::signal::{derivative, SampledSignal, SignalRole};
use rayon::prelude::*;

/// amplitude · d^order δ(t)/dt^order located at t = 0, which a sampled output
/// cannot hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Impulse {
    pub amplitude: f64,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionOutput {
    pub signal: SampledSignal,
    /// Distributional content at the origin.
    pub impulses: Vec<Impulse>,
    pub scheme: String,
    pub provenance: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StressPath {
    /// τ = ∫ G(t−ξ) dγ(ξ)
    Relaxation,
    /// τ = ∫ M(t−ξ) γ(ξ) dξ with the singular part as fractional derivatives.
    Memory,
}

/// Exact antiderivatives of the regular part sampled at m·dt.
struct Moments {
    k1: Vec<f64>,
    k2: Vec<f64>,
}

impl Moments {
    fn new(regular: &[MLTerm], dt: f64, n: usize) -> Result<Self> {
        let mut first = Vec::with_capacity(regular.len());
        let mut second = Vec::with_capacity(regular.len());
        for r in regular {
            if !r.is_integrable() {
                return Err(Error::Divergence(format!(
                    "kernel term t^{} is not integrable",
                    r.power
                )));
            }
            first.push(ml_frac_integral(r, 1.0)?);
            second.push(ml_frac_integral(r, 2.0)?);
        }
        let at = |terms: &[MLTerm]| -> Vec<f64> {
            (0..=n)
                .into_par_iter()
                .map(|m| terms.iter().map(|t| t.eval(m as f64 * dt)).sum())
                .collect()
        };
        Ok(Self {
            k1: at(&first),
            k2: at(&second),
        })
    }
}

fn check_input(sig: &SampledSignal) -> Result<()> {
    if let Some(index) = sig.values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    sig.require_continuous_start()
}

/// ∫₀^{t_n} K(t_n − ξ) x(ξ) dξ for the regular part, x = step + piecewise linear.
fn regular_against_signal(m: &Moments, sig: &SampledSignal, n: usize) -> f64 {
    let dt = sig.dt;
    let v = &sig.values;
    let mut acc = sig.step_amplitude * m.k1[n];
    for j in 0..n {
        let (a, b) = (n - j, n - j - 1);
        let slope = (v[j + 1] - v[j]) / dt;
        acc += v[j] * (m.k1[a] - m.k1[b]) + slope * (m.k2[a] - m.k2[b] - dt * m.k1[b]);
    }
    acc
}

/// ∫₀^{t_n} G(t_n − ξ) dx(ξ) for the regular part with a piecewise-constant rate.
fn regular_against_rate(m: &Moments, regular: &[MLTerm], sig: &SampledSignal, n: usize) -> f64 {
    let v = &sig.values;
    let t = n as f64 * sig.dt;
    let mut acc = if sig.step_amplitude != 0.0 {
        sig.step_amplitude * regular.iter().map(|r| r.eval(t)).sum::<f64>()
    } else {
        0.0
    };
    for j in 0..n {
        let rate = (v[j + 1] - v[j]) / sig.dt;
        acc += rate * (m.k1[n - j] - m.k1[n - j - 1]);
    }
    acc
}

/// c·D^{order}x sampled on the signal grid, plus any impulses at the origin.
fn singular_action(s: &SingularTerm, order: f64, sig: &SampledSignal) -> (Vec<f64>, Vec<Impulse>) {
    let c = s.coefficient;
    if order != order.round() {
        let d = gl_derivative_native(sig, order);
        return (d.into_iter().map(|v| c * v).collect(), Vec::new());
    }
    let m = order as u32;
    if m == 0 {
        return (
            (0..sig.len()).map(|j| c * sig.total(j)).collect(),
            Vec::new(),
        );
    }
    let mut impulses = Vec::new();
    if sig.step_amplitude != 0.0 {
        impulses.push(Impulse {
            amplitude: c * sig.step_amplitude,
            order: m - 1,
        });
    }
    let mut d = sig.values.clone();
    for level in 1..=m {
        d = derivative(&d, sig.dt);
        // The rate jumps from 0 to x'(0+) at the origin; a further derivative sees a delta.
        if level < m && !d.is_empty() && d[0] != 0.0 {
            impulses.push(Impulse {
                amplitude: c * d[0],
                order: m - level - 1,
            });
        }
    }
    (d.into_iter().map(|v| c * v).collect(), impulses)
}

fn combine(parts: Vec<(Vec<f64>, Vec<Impulse>)>, len: usize) -> (Vec<f64>, Vec<Impulse>) {
    let mut out = vec![0.0; len];
    let mut impulses: Vec<Impulse> = Vec::new();
    for (vals, imps) in parts {
        for (o, v) in out.iter_mut().zip(vals) {
            *o += v;
        }
        for imp in imps {
            match impulses.iter_mut().find(|i| i.order == imp.order) {
                Some(i) => i.amplitude += imp.amplitude,
                None => impulses.push(imp),
            }
        }
    }
    impulses.retain(|i| i.amplitude != 0.0);
    (out, impulses)
}

/// ∫ K(t−ξ) x(ξ) dξ over the whole grid.
fn convolve(kernel: &TimeResponseKernel, sig: &SampledSignal) -> Result<(Vec<f64>, Vec<Impulse>)> {
    check_input(sig)?;
    let n = sig.len();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let moments = Moments::new(&kernel.regular, sig.dt, n - 1)?;
    let regular: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|k| regular_against_signal(&moments, sig, k))
        .collect();
    let mut parts = vec![(regular, Vec::new())];
    parts.extend(
        kernel
            .singular
            .iter()
            .map(|s| singular_action(s, s.order, sig)),
    );
    Ok(combine(parts, n))
}

fn output(
    values: Vec<f64>,
    impulses: Vec<Impulse>,
    like: &SampledSignal,
    role: SignalRole,
    scheme: &str,
    kernel: &TimeResponseKernel,
) -> ConvolutionOutput {
    ConvolutionOutput {
        signal: SampledSignal {
            dt: like.dt,
            values,
            role,
            step_amplitude: 0.0,
        },
        impulses,
        scheme: scheme.to_string(),
        provenance: kernel.provenance.clone(),
    }
}

const PRODUCT_LINEAR: &str = "product integration, piecewise-linear input, exact kernel moments";
const PRODUCT_RATE: &str = "product integration, piecewise-constant rate, exact kernel moments";

/// Stress history from a strain history through the relaxation modulus.
pub fn stress_from_strain(model: &RheoModel, strain: &SampledSignal) -> Result<ConvolutionOutput> {
    stress_from_strain_via(model, strain, StressPath::Relaxation)
}

pub fn stress_from_strain_via(
    model: &RheoModel,
    strain: &SampledSignal,
    path: StressPath,
) -> Result<ConvolutionOutput> {
    match path {
        StressPath::Memory => {
            let m = memory_function(model)?;
            let (v, imp) = convolve(&m, strain)?;
            Ok(output(
                v,
                imp,
                strain,
                SignalRole::Stress,
                PRODUCT_LINEAR,
                &m,
            ))
        }
        StressPath::Relaxation => {
            let g = relaxation_modulus(model)?;
            let all: Vec<usize> = (0..strain.len()).collect();
            let (v, imp) = relaxation_path(&g, strain, &all)?;
            Ok(output(v, imp, strain, SignalRole::Stress, PRODUCT_RATE, &g))
        }
    }
}

/// ∫ G(t−ξ) dx(ξ) at the requested indices (singular parts need the whole grid
/// up to the last index and are computed there).
fn relaxation_path(
    g: &TimeResponseKernel,
    sig: &SampledSignal,
    indices: &[usize],
) -> Result<(Vec<f64>, Vec<Impulse>)> {
    check_input(sig)?;
    let n = sig.len();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let moments = Moments::new(&g.regular, sig.dt, n - 1)?;
    let regular: Vec<f64> = indices
        .par_iter()
        .map(|&k| regular_against_rate(&moments, &g.regular, sig, k))
        .collect();
    let mut parts = vec![(regular, Vec::new())];
    for s in &g.singular {
        let (vals, imps) = singular_action(s, s.order + 1.0, sig);
        parts.push((indices.iter().map(|&k| vals[k]).collect(), imps));
    }
    Ok(combine(parts, indices.len()))
}

/// Strain history from a stress history through the impulse fluidity.
pub fn strain_from_stress(model: &RheoModel, stress: &SampledSignal) -> Result<ConvolutionOutput> {
    let phi = impulse_fluidity(model)?;
    let (v, imp) = convolve(&phi, stress)?;
    Ok(output(
        v,
        imp,
        stress,
        SignalRole::Strain,
        PRODUCT_LINEAR,
        &phi,
    ))
}

/// Strain-rate history from a stress history through the impulse strain-rate response.
pub fn strain_rate_from_stress(
    model: &RheoModel,
    stress: &SampledSignal,
) -> Result<ConvolutionOutput> {
    let psi = impulse_strain_rate(model)?;
    let (v, imp) = convolve(&psi, stress)?;
    Ok(output(
        v,
        imp,
        stress,
        SignalRole::StrainRate,
        PRODUCT_LINEAR,
        &psi,
    ))
}

fn grid_indices(dt: f64, t_eval: &[f64]) -> Result<Vec<usize>> {
    t_eval
        .iter()
        .map(|&t| {
            let j = (t / dt).round();
            if t < 0.0 || (t - j * dt).abs() > 1e-9 * dt.max(t) {
                Err(Error::GridMismatch(format!(
                    "t = {t} is not a multiple of dt = {dt}"
                )))
            } else {
                Ok(j as usize)
            }
        })
        .collect()
}

/// max over `t_eval` of |∫₀ᵗ G(t−ξ) dJ(ξ) − 1|, where J is sampled with step
/// `dt` (its jump J(0+) carried as a step) and the integral is the relaxation
/// path of [`stress_from_strain`]. Every entry of `t_eval` must be a multiple
/// of `dt`.
pub fn interconversion_residual(model: &RheoModel, dt: f64, t_eval: &[f64]) -> Result<f64> {
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "time step must be positive, got {dt}"
        )));
    }
    let indices = grid_indices(dt, t_eval)?;
    let Some(&last) = indices.iter().max() else {
        return Ok(0.0);
    };
    let j = creep_compliance(model)?;
    let g = relaxation_modulus(model)?;
    let j0 = j.eval(0.0);
    let values: Vec<f64> = (0..=last)
        .map(|k| {
            if k == 0 {
                0.0
            } else {
                j.eval(k as f64 * dt) - j0
            }
        })
        .collect();
    let sig = SampledSignal::with_step(dt, values, SignalRole::Strain, j0)?;
    let (tau, _) = relaxation_path(&g, &sig, &indices)?;
    Ok(tau.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max))
}

/// ∫₀ᵀ K(t) e^{−st} dt plus the transform s^r of every delta derivative.
/// The regular part is integrated against the piecewise-linear interpolant of
/// e^{−st} with `steps` panels using exact kernel moments. Unless
/// `allow_short_horizon` is set, s·T must be at least 14.
pub fn laplace_transform_kernel(
    kernel: &TimeResponseKernel,
    s: f64,
    horizon: f64,
    steps: usize,
    allow_short_horizon: bool,
) -> Result<f64> {
    check_laplace(s, horizon, allow_short_horizon)?;
    if steps == 0 {
        return Err(Error::InvalidParameter(
            "at least one panel is needed".into(),
        ));
    }
    let dt = horizon / steps as f64;
    let m = Moments::new(&kernel.regular, dt, steps)?;
    let w: Vec<f64> = (0..=steps).map(|k| (-s * k as f64 * dt).exp()).collect();
    let mut acc = 0.0;
    for k in 0..steps {
        let dk1 = m.k1[k + 1] - m.k1[k];
        // ∫ K(u)(u − u_k) du over the panel = dt·K1(u_{k+1}) − ΔK2.
        let first = dt * m.k1[k + 1] - (m.k2[k + 1] - m.k2[k]);
        acc += w[k] * dk1 + (w[k + 1] - w[k]) / dt * first;
    }
    let singular: f64 = kernel
        .singular
        .iter()
        .map(|t| t.coefficient * s.powf(t.order))
        .sum();
    Ok(acc + singular)
}

/// ∫₀ᵀ x(t) e^{−st} dt for a sampled signal (step plus piecewise-linear part),
/// integrated exactly panel by panel. T is the last sample time.
pub fn laplace_transform_signal(
    sig: &SampledSignal,
    s: f64,
    allow_short_horizon: bool,
) -> Result<f64> {
    let horizon = sig.dt * sig.len().saturating_sub(1) as f64;
    check_laplace(s, horizon, allow_short_horizon)?;
    let e: Vec<f64> = (0..sig.len()).map(|k| (-s * sig.time(k)).exp()).collect();
    let mut acc = sig.step_amplitude * (1.0 - e.last().copied().unwrap_or(1.0)) / s;
    for k in 0..sig.len().saturating_sub(1) {
        let slope = (sig.values[k + 1] - sig.values[k]) / sig.dt;
        let de = e[k] - e[k + 1];
        acc += sig.values[k] * de / s + slope * (de / (s * s) - sig.dt * e[k + 1] / s);
    }
    Ok(acc)
}

fn check_laplace(s: f64, horizon: f64, allow_short_horizon: bool) -> Result<()> {
    if !(s > 0.0) || !(horizon > 0.0) {
        return Err(Error::InvalidParameter(
            "Laplace transform needs s > 0 and a positive horizon".into(),
        ));
    }
    if !allow_short_horizon && s * horizon < 14.0 {
        return Err(Error::TailTooFat { st: s * horizon });
    }
    Ok(())
}
