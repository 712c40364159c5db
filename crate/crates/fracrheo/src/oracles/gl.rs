use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rug::ops::Pow;
use rug::Float;

const PREC_BITS: u32 = 256;
pub const GL_REFERENCE_MAX_TERMS: usize = 4096;

/// w_k = Γ(k − q) / (Γ(−q) Γ(k + 1)) evaluated literally in 256-bit MPFR.
/// Integer q, where Γ(−q) has a pole, uses the limiting binomial form (−1)^k C(q, k).
pub fn gl_weight_gamma_quotient(q: f64, k: usize) -> f64 {
    gl_weight_mpfr(q, k).to_f64()
}

fn gl_weight_mpfr(q: f64, k: usize) -> Float {
    let qf = Float::with_val(PREC_BITS, q);
    if q == q.floor() {
        let qi = q as i64;
        if (k as i64) > qi {
            return Float::with_val(PREC_BITS, 0);
        }
        // (−1)^k C(q, k)
        let mut c = Float::with_val(PREC_BITS, 1);
        for j in 0..k as i64 {
            c *= qi - j;
            c /= j + 1;
        }
        return if k.is_multiple_of(2) { c } else { -c };
    }
    let kf = Float::with_val(PREC_BITS, k as u32);
    let num = Float::with_val(PREC_BITS, &kf - &qf).gamma();
    let den =
        Float::with_val(PREC_BITS, -&qf).gamma() * Float::with_val(PREC_BITS, &kf + 1u32).gamma();
    num / den
}

/// Exact rational weights w_k = Π_{j<k} (j − q) / k! for rational q, k < n.
pub fn gl_weights_exact(q: &BigRational, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|k| {
            let mut num = BigRational::one();
            let mut fact = BigInt::one();
            for j in 0..k {
                num *= BigRational::from_integer(BigInt::from(j)) - q;
                fact *= BigInt::from(j + 1);
            }
            num / BigRational::from_integer(fact)
        })
        .collect()
}

/// Definitional Grünwald-Letnikov sum h^{−q} Σ_{k<n} w_k f(t − k h), h = t/n,
/// with Γ-quotient weights and MPFR accumulation.
pub fn gl_reference<F: Fn(f64) -> f64>(f: F, q: f64, t: f64, n: usize) -> Result<f64> {
    if n > GL_REFERENCE_MAX_TERMS {
        return Err(Error::InvalidParameter(format!(
            "gl_reference is limited to n <= {GL_REFERENCE_MAX_TERMS}, got {n}"
        )));
    }
    if n < 1 || !(t > 0.0) || !(q >= 0.0) {
        return Err(Error::InvalidParameter(
            "gl_reference needs n >= 1, t > 0, q >= 0".into(),
        ));
    }
    let h = t / n as f64;
    let mut acc = Float::with_val(PREC_BITS, 0);
    for k in 0..n {
        let w = gl_weight_mpfr(q, k);
        if w.is_zero() {
            continue;
        }
        acc += w * f(t - k as f64 * h);
    }
    let scale = Float::with_val(PREC_BITS, h).pow(-q);
    Ok((acc * scale).to_f64())
}
