use crate::error::{Error, Result};
use crate::special_functions::{ln_gamma, sin_pi, MLArgs};
use num_complex::Complex64;
use rug::ops::Pow;
use rug::Float;
use std::f64::consts::PI;

/// Decimal exponent of the largest Taylor term above which the definitional
/// sum is considered too expensive.
const MAX_PEAK_DIGITS: f64 = 200.0;
const MAX_TERMS: usize = 8_000;

/// How a reference value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlReferenceMethod {
    /// Σ z^j/Γ(αj+β) in MPFR arithmetic.
    ExtendedTaylor,
    /// Real-axis Hankel representation, used only where the series would need
    /// more than a few hundred digits (small α, large |z|).
    CutIntegral,
}

/// Reference value of E_{α,β}(z) (β > 0) together with the method used.
pub fn ml_reference_with_method(
    args: MLArgs,
    precision_digits: u32,
) -> Result<(f64, MlReferenceMethod)> {
    let MLArgs { alpha, beta, z } = args;
    if !(alpha > 0.0) || !(beta > 0.0) {
        return Err(Error::InvalidParameter(
            "ml_reference requires alpha > 0 and beta > 0".into(),
        ));
    }
    let (peak_digits, terms) = series_cost(alpha, beta, z, precision_digits);
    if z >= 0.0 || (peak_digits <= MAX_PEAK_DIGITS && terms <= MAX_TERMS) {
        return Ok((
            taylor_mpfr(alpha, beta, z, precision_digits, peak_digits),
            MlReferenceMethod::ExtendedTaylor,
        ));
    }
    if alpha >= 1.0 {
        return Err(Error::Unsupported(format!(
            "no reference method for alpha = {alpha}, z = {z} (series needs {peak_digits:.0} digits)"
        )));
    }
    Ok((
        cut_integral(alpha, beta, -z),
        MlReferenceMethod::CutIntegral,
    ))
}

/// Reference value of E_{α,β}(z) for β > 0.
pub fn ml_reference(args: MLArgs, precision_digits: u32) -> Result<f64> {
    ml_reference_with_method(args, precision_digits).map(|(v, _)| v)
}

/// (log10 of the largest term, number of terms needed) for the Taylor series.
fn series_cost(alpha: f64, beta: f64, z: f64, digits: u32) -> (f64, usize) {
    if z == 0.0 {
        return (0.0, 1);
    }
    let lz = z.abs().ln();
    let mut peak = f64::NEG_INFINITY;
    let mut k = 0usize;
    loop {
        let lt = k as f64 * lz - ln_gamma(alpha * k as f64 + beta);
        peak = peak.max(lt);
        let past_peak = (k as f64) * alpha + beta > z.abs().powf(1.0 / alpha) + 2.0;
        if past_peak && lt < peak.min(0.0) - (digits as f64 + 5.0) * std::f64::consts::LN_10 {
            return (peak / std::f64::consts::LN_10, k + 1);
        }
        k += 1;
        if k > 10 * MAX_TERMS {
            return (peak / std::f64::consts::LN_10, k);
        }
    }
}

fn taylor_mpfr(alpha: f64, beta: f64, z: f64, digits: u32, peak_digits: f64) -> f64 {
    let bits = ((peak_digits.max(0.0) + digits as f64 + 20.0) * 3.33).ceil() as u32 + 64;
    let a = Float::with_val(bits, alpha);
    let b = Float::with_val(bits, beta);
    let zf = Float::with_val(bits, z);
    let mut sum = Float::with_val(bits, 0);
    let mut zk = Float::with_val(bits, 1);
    let threshold = Float::with_val(bits, 10).pow(-(digits as i32));
    let reach = z.abs().powf(1.0 / alpha);
    let mut small_run = 0;
    let mut k: u32 = 0;
    loop {
        let arg = Float::with_val(bits, &a * k) + &b;
        let term = Float::with_val(bits, &zk / arg.gamma());
        sum += &term;
        let rel = Float::with_val(bits, term.abs_ref())
            / Float::with_val(bits, sum.abs_ref()).max(&Float::with_val(bits, 1e-300));
        let beyond_peak = alpha * k as f64 + beta > reach + 1.0;
        if beyond_peak && rel < threshold {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        zk *= &zf;
        k += 1;
        if k as usize > 10 * MAX_TERMS {
            break;
        }
    }
    sum.to_f64()
}

/// E_{α,β}(−x) for 0 < α < 1 from the Hankel contour collapsed onto the
/// negative real axis with a unit keyhole:
///
/// (1/π)∫₁^∞ e^{−r} r^{α−β} [r^α sin πβ − x sin π(α−β)] / (r^{2α} + 2x r^α cos πα + x²) dr
/// + (1/π)∫₀^π Re[e^s s^{α−β+1}/(s^α + x)]_{s=e^{iθ}} dθ.
///
/// Integrated with double-exponential rules, deliberately unlike the
/// rotated-ray Gauss-Kronrod scheme of the main evaluator.
fn cut_integral(alpha: f64, beta: f64, x: f64) -> f64 {
    let sb = sin_pi(beta);
    let sab = sin_pi(alpha - beta);
    let ca = crate::special_functions::cos_pi(alpha);
    let ray = |r: f64| {
        let ra = r.powf(alpha);
        (-r).exp() * r.powf(alpha - beta) * (ra * sb - x * sab)
            / (ra * ra + 2.0 * x * ra * ca + x * x)
            / PI
    };
    let arc = |th: f64| {
        let s = Complex64::from_polar(1.0, th);
        let num = s.exp() * Complex64::from_polar(1.0, (alpha - beta + 1.0) * th);
        (num / (Complex64::from_polar(1.0, alpha * th) + x)).re / PI
    };
    exp_sinh(ray, 1.0) + tanh_sinh(arc, 0.0, PI)
}

fn refine<F: Fn(i64, f64) -> f64>(rule: F) -> f64 {
    let mut prev = f64::NAN;
    for level in 3..=12 {
        let h = 1.0 / (1u64 << level) as f64;
        let n = (7.0 / h) as i64;
        let mut s = 0.0;
        for i in -n..=n {
            s += rule(i, h);
        }
        let est = s * h;
        if (est - prev).abs() <= 1e-16 * est.abs().max(1e-3) {
            return est;
        }
        prev = est;
    }
    prev
}

/// ∫_a^∞ f via x = a + exp(π/2 sinh t).
fn exp_sinh<F: Fn(f64) -> f64>(f: F, a: f64) -> f64 {
    refine(|i, h| {
        let t = i as f64 * h;
        let e = (PI / 2.0 * t.sinh()).exp();
        let xv = a + e;
        if !xv.is_finite() || e == 0.0 || xv == a {
            return 0.0;
        }
        let w = PI / 2.0 * t.cosh() * e;
        let v = f(xv) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    })
}

/// ∫_a^b f via x = (a+b)/2 + (b−a)/2 tanh(π/2 sinh t).
fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let (c, hw) = (0.5 * (a + b), 0.5 * (b - a));
    refine(|i, h| {
        let t = i as f64 * h;
        let u = PI / 2.0 * t.sinh();
        let ch = u.cosh();
        let w = PI / 2.0 * t.cosh() / (ch * ch);
        if w < 1e-300 {
            return 0.0;
        }
        let xv = c + hw * u.tanh();
        if xv <= a || xv >= b {
            return 0.0;
        }
        f(xv) * hw * w
    })
}
