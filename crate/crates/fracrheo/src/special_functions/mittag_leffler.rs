//! Two-parameter Mittag-Leffler function E_{α,β}(z) for real z.
//!
//! E_{α,β}(z) = Σ_{j≥0} z^j / Γ(αj + β).
//!
//! Three evaluation regimes are used:
//!
//! * the Taylor series, when |z|^{1/α} ≤ 2 so that the alternating sum loses
//!   at most a couple of digits;
//! * the algebraic asymptotic expansion for large negative z when 0 < α < 1
//!   (no exponentially small contributions exist there) and the smallest
//!   term of the divergent series is below the tolerance;
//! * otherwise, the inverse-Laplace integral
//!   E_{α,β}(z) = (2πi)⁻¹ ∫_H e^s s^{α−β} / (s^α − z) ds
//!   on a Hankel contour made of two rays at angle ±θ₀ and the unit arc,
//!   plus the residues (1/α) s*^{1−β} e^{s*} of the poles s*^α = z swept by
//!   the deformation. This representation is exact for every α > 0, which
//!   matters for α near 2 where E oscillates (E_{2,1}(−x²) = cos x) and the
//!   algebraic expansion is useless.
//!
//! A non-positive second index is first lifted by E_{α,β}(z) = 1/Γ(β) + z E_{α,α+β}(z).

use super::gamma::{ln_gamma, recip_gamma, sin_pi, GAMMA_MAX_ARG};
use super::quad;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default relative tolerance used by [`ml`].
pub const DEFAULT_TOL: f64 = 1e-15;

const TAYLOR_MAX_TERMS: usize = 10_000;
const TAYLOR_REACH: f64 = 2.0;

/// Arguments (α, β, z) of E_{α,β}(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLArgs {
    pub alpha: f64,
    pub beta: f64,
    pub z: f64,
}

impl MLArgs {
    pub fn new(alpha: f64, beta: f64, z: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Mittag-Leffler alpha must be > 0, got {alpha}"
            )));
        }
        if !beta.is_finite() || !z.is_finite() {
            return Err(Error::InvalidParameter(
                "Mittag-Leffler beta and z must be finite".into(),
            ));
        }
        Ok(Self { alpha, beta, z })
    }
}

/// One application of the index-raising recurrence:
/// E_{α,β}(z) = `leading` + `factor` · E_{shifted}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceSplit {
    /// 1/Γ(β)
    pub leading: f64,
    /// z
    pub factor: f64,
    /// (α, α+β, z)
    pub shifted: MLArgs,
}

pub fn ml_recurrence_shift(args: MLArgs) -> RecurrenceSplit {
    RecurrenceSplit {
        leading: recip_gamma(args.beta),
        factor: args.z,
        shifted: MLArgs {
            alpha: args.alpha,
            beta: args.alpha + args.beta,
            z: args.z,
        },
    }
}

/// E_{α,β}(z) to relative tolerance `tol` (mixed with an absolute floor of
/// `tol` for results much smaller than one).
pub fn mittag_leffler(args: MLArgs, tol: f64) -> Result<f64> {
    let MLArgs { alpha, beta, z } = MLArgs::new(args.alpha, args.beta, args.z)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    // Lift β until it is positive, accumulating the extracted power terms.
    // Each step multiplies the remainder by z, so for |z| > 1 the lifted sum
    // cancels catastrophically (|z|^{⌈−β/α⌉} at small α); every regime below
    // is valid for non-positive β, so there the function is evaluated directly.
    let mut beta = beta;
    let mut prefix = 0.0;
    let mut zpow = 1.0;
    while beta <= 0.0 && z.abs() <= 1.0 {
        let split = ml_recurrence_shift(MLArgs { alpha, beta, z });
        prefix += zpow * split.leading;
        zpow *= split.factor;
        beta = split.shifted.beta;
    }
    let est = evaluate_regimes(alpha, beta, z, tol)?;
    let value = prefix + zpow * est.value;
    let achieved = (zpow * est.error).abs();
    // Failure means the error estimate exceeds the request by two orders of
    // magnitude (floored at a few ulps, which no regime can beat).
    let limit = 100.0 * tol.max(64.0 * f64::EPSILON) * value.abs().max(1.0);
    if !value.is_finite() || achieved > limit {
        return Err(Error::NonConvergence {
            best: value,
            achieved,
        });
    }
    Ok(value)
}

/// E_{α,β}(z) with the default tolerance; returns the best available estimate
/// (NaN for invalid α) instead of an error. Intended for bulk kernel sampling.
pub fn ml(alpha: f64, beta: f64, z: f64) -> f64 {
    match mittag_leffler(MLArgs { alpha, beta, z }, DEFAULT_TOL) {
        Ok(v) => v,
        Err(Error::NonConvergence { best, .. }) => best,
        Err(_) => f64::NAN,
    }
}

/// The experimental order-zero case E_0(z) = Σ z^j = 1/(1 − z), valid only for |z| < 1.
pub fn ml_order_zero(z: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "E_0(z) = 1/(1-z) is only used for |z| < 1, got z = {z}"
        )));
    }
    Ok(1.0 / (1.0 - z))
}

#[derive(Debug, Clone, Copy)]
struct Estimate {
    value: f64,
    error: f64,
}

fn evaluate_regimes(alpha: f64, beta: f64, z: f64, tol: f64) -> Result<Estimate> {
    if z == 0.0 {
        return Ok(Estimate {
            value: recip_gamma(beta),
            error: 0.0,
        });
    }
    if let Some(e) = exponential_closed_form(alpha, beta, z) {
        return Ok(e);
    }
    let reach = z.abs().powf(1.0 / alpha);
    if reach <= TAYLOR_REACH {
        match taylor(alpha, beta, z, tol) {
            Ok(e) => return Ok(e),
            Err(err) => {
                if !(z < 0.0 && alpha < 1.0) {
                    return Err(err);
                }
            }
        }
    }
    if z < 0.0 && alpha < 1.0 {
        if let Some(e) = asymptotic(alpha, beta, -z, tol) {
            return Ok(e);
        }
    }
    Ok(contour(alpha, beta, z, tol))
}

/// E_{1,m}(z) = z^{1−m}(e^z − Σ_{k<m−1} z^k/k!) for m = 1, 2, 3 and z < −2.
/// Keeps full relative accuracy on the exponentially small values.
fn exponential_closed_form(alpha: f64, beta: f64, z: f64) -> Option<Estimate> {
    if alpha != 1.0 || z >= -TAYLOR_REACH || !(beta == 1.0 || beta == 2.0 || beta == 3.0) {
        return None;
    }
    let value = match beta as u8 {
        1 => z.exp(),
        2 => z.exp_m1() / z,
        _ => (z.exp_m1() - z) / (z * z),
    };
    Some(Estimate {
        value,
        error: 4.0 * f64::EPSILON * value.abs(),
    })
}

/// Neumaier-compensated Taylor sum with the three-consecutive-small-terms stop rule.
fn taylor(alpha: f64, beta: f64, z: f64, tol: f64) -> Result<Estimate> {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    let mut abs_sum = 0.0_f64;
    let mut zk = 1.0_f64;
    let mut small_run = 0;
    for k in 0..TAYLOR_MAX_TERMS {
        let term = zk * recip_gamma(alpha * k as f64 + beta);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        abs_sum += term.abs();
        let total = sum + comp;
        if term.abs() < tol * total.abs() || (term == 0.0 && zk == 0.0) {
            small_run += 1;
            if small_run >= 3 {
                return Ok(Estimate {
                    value: total,
                    error: 4.0 * f64::EPSILON * abs_sum,
                });
            }
        } else {
            small_run = 0;
        }
        zk *= z;
        if !zk.is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence {
        best: sum + comp,
        achieved: f64::INFINITY,
    })
}

/// E_{α,β}(−x) ≈ Σ_{k=1}^{K} (−1)^{k+1} x^{−k} / Γ(β − αk), optimally truncated.
/// Only meaningful for 0 < α < 1, where the remainder is algebraically small.
pub fn ml_asymptotic(alpha: f64, beta: f64, x: f64) -> (f64, f64) {
    let mut sum = 0.0;
    let mut prev_bound = f64::INFINITY;
    let lnx = x.ln();
    for k in 1..200 {
        let kf = k as f64;
        // |1/Γ(β−αk)| ≤ Γ(1−β+αk)/π by reflection, used as a size bound.
        let arg = 1.0 - beta + alpha * kf;
        let bound = if arg > 0.0 {
            (ln_gamma(arg) - kf * lnx).exp() / PI
        } else {
            (-kf * lnx).exp()
        };
        if bound > prev_bound {
            return (sum, prev_bound);
        }
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        // Far out, 1/Γ overflows while x^{−k} underflows; combine them in logs.
        let b = beta - alpha * kf;
        let term = if 1.0 - b > GAMMA_MAX_ARG {
            sin_pi(b) / PI * (ln_gamma(1.0 - b) - kf * lnx).exp()
        } else {
            (-kf * lnx).exp() * recip_gamma(b)
        };
        sum += sign * term;
        prev_bound = bound;
    }
    (sum, prev_bound)
}

fn asymptotic(alpha: f64, beta: f64, x: f64, tol: f64) -> Option<Estimate> {
    let (value, remainder) = ml_asymptotic(alpha, beta, x);
    if remainder <= 0.1 * tol * value.abs().max(1e-3) {
        Some(Estimate {
            value,
            error: remainder,
        })
    } else {
        None
    }
}

/// Principal-branch angles θ with s = |z|^{1/α} e^{iθ} solving s^α = z.
fn pole_angles(alpha: f64, z: f64) -> Vec<f64> {
    let arg = if z < 0.0 { PI } else { 0.0 };
    let jmax = (alpha / 2.0).ceil() as i64 + 1;
    (-jmax..=jmax)
        .map(|j| (arg + 2.0 * PI * j as f64) / alpha)
        .filter(|t| t.abs() < PI)
        .collect()
}

/// Ray angle in [0.6π, 0.9π] farthest from every pole direction and from the cut.
fn ray_angle(poles: &[f64]) -> f64 {
    let mut best = (0.6 * PI, -1.0);
    for i in 0..=30 {
        let theta = (0.6 + 0.01 * i as f64) * PI;
        let gap = poles
            .iter()
            .map(|p| (p.abs() - theta).abs())
            .fold(PI - theta, f64::min);
        if gap > best.1 {
            best = (theta, gap);
        }
    }
    best.0
}

fn contour(alpha: f64, beta: f64, z: f64, tol: f64) -> Estimate {
    let reach = z.abs().powf(1.0 / alpha);
    let poles = pole_angles(alpha, z);
    let theta0 = ray_angle(&poles);

    // Residues of poles lying in the region swept between the Bromwich line
    // and the Hankel contour (|arg s| < θ₀, |s| > 1).
    let mut residues = 0.0;
    for &th in poles.iter().filter(|t| t.abs() < theta0) {
        let s = Complex64::from_polar(reach, th);
        let pow = Complex64::from_polar(reach.powf(1.0 - beta), (1.0 - beta) * th);
        residues += (pow * s.exp()).re / alpha;
    }

    // Integrand F(s) = e^s s^{α−β} / (s^α − z) with s = r e^{iθ}.
    let f = |r: f64, th: f64| -> Complex64 {
        let s = Complex64::from_polar(r, th);
        let num = Complex64::from_polar(r.powf(alpha - beta), (alpha - beta) * th);
        let den = Complex64::from_polar(r.powf(alpha), alpha * th) - z;
        s.exp() * num / den
    };
    let (c0, s0) = (theta0.cos(), theta0.sin());
    let ray = |r: f64| (f(r, theta0) * Complex64::new(c0, s0)).im / PI;
    let arc = |th: f64| (f(1.0, th) * Complex64::from_polar(1.0, th)).re / PI;

    // e^{r cos θ₀} must beat the growth r^{−β} of the integrand for β < 0.
    let r_max = 1.0 + (45.0 + 5.0 * (-beta).max(0.0)) / c0.abs();
    let mut breaks = vec![1.0];
    let mut b = 2.0;
    while b < r_max {
        breaks.push(b);
        b *= 2.0;
    }
    if reach > 1.0 && reach < r_max {
        breaks.push(reach);
    }
    breaks.push(r_max);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Each Gauss-Kronrod panel carries a roundoff floor of about 50 ulps, so
    // asking for more than 1e-13 only burns evaluations.
    let rel = tol.max(1e-13);
    let q_ray = quad::integrate(ray, &breaks, 1e-2 * rel, rel, 400);
    let q_arc = quad::integrate(arc, &[0.0, 0.5 * theta0, theta0], 1e-2 * rel, rel, 200);
    let value = residues + q_ray.value + q_arc.value;
    let error = q_ray.error + q_arc.error + f64::EPSILON * residues.abs();
    Estimate { value, error }
}
