use crate::error::{Error, Result};

/// ∫₀ᵗ K(u) f(t − u) du by the composite midpoint rule in the graded variable
/// u = t·v⁸, which clusters points where a weakly singular kernel blows up.
///
/// Kernels that are not finite away from u = 0 (delta-like or non-integrable
/// parts) are rejected with [`Error::Divergence`]; those must be handled
/// symbolically by the caller.
pub fn convolution_reference<K, F>(kernel: K, input: F, t: f64, panels: usize) -> Result<f64>
where
    K: Fn(f64) -> f64,
    F: Fn(f64) -> f64,
{
    if t <= 0.0 {
        return Ok(0.0);
    }
    if panels == 0 {
        return Err(Error::InvalidParameter(
            "convolution_reference needs at least one panel".into(),
        ));
    }
    const GRADING: i32 = 8;
    let dv = 1.0 / panels as f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for i in 0..panels {
        let v = (i as f64 + 0.5) * dv;
        let u = t * v.powi(GRADING);
        let k = kernel(u);
        if !k.is_finite() {
            return Err(Error::Divergence(format!(
                "kernel is not finite at u = {u}"
            )));
        }
        let term = k * input(t - u) * GRADING as f64 * t * v.powi(GRADING - 1) * dv;
        // Neumaier summation keeps the reference free of accumulation error.
        let s = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - s) + term
        } else {
            (term - s) + sum
        };
        sum = s;
    }
    Ok(sum + comp)
}
