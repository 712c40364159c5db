use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Largest argument for which Γ(x) is finite in double precision.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// statrs' Lanczos sum overflows slightly below the true limit, so larger
/// arguments are pulled down with Γ(x) = (x−1)…(x−k)Γ(x−k).
const LANCZOS_SAFE: f64 = 160.0;

/// Γ(x) for 0.5 ≤ x ≤ GAMMA_MAX_ARG.
fn gamma_positive(x: f64) -> f64 {
    if x <= LANCZOS_SAFE {
        return statrs::function::gamma::gamma(x);
    }
    let k = (x - LANCZOS_SAFE).ceil();
    let mut y = x - k;
    let mut g = statrs::function::gamma::gamma(y);
    while y < x - 0.5 {
        g *= y;
        y += 1.0;
    }
    g
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// sin(πx) that is exactly zero at every integer and symmetric about them.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // Reduce to r in [-1, 1]; sin(πx) has period 2.
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    let (a, sign) = if r < 0.0 { (-r, -1.0) } else { (r, 1.0) };
    let a = if a > 0.5 { 1.0 - a } else { a };
    sign * (PI * a).sin()
}

/// cos(πx), exactly zero at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// Γ(x) for real x.
///
/// Small positive integers are returned as exact factorials; everything else
/// goes through the Lanczos approximation (with the reflection formula below 1/2).
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidParameter("gamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow(x));
    }
    if x == x.floor() && x <= 30.0 {
        let mut f = 1.0_f64;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if x < 0.5 {
        // Γ(x) = π / (sin(πx) Γ(1−x))
        let g1 = if 1.0 - x > GAMMA_MAX_ARG {
            f64::INFINITY
        } else {
            gamma_positive(1.0 - x)
        };
        let v = PI / (sin_pi(x) * g1);
        if g1.is_infinite() {
            return Ok(0.0_f64.copysign(v));
        }
        return Ok(v);
    }
    Ok(gamma_positive(x))
}

/// 1/Γ(x); total, and exactly 0 at the poles 0, −1, −2, ….
pub fn recip_gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > GAMMA_MAX_ARG {
        return (-statrs::function::gamma::ln_gamma(x)).exp();
    }
    if x < 0.5 {
        // 1/Γ(x) = sin(πx) Γ(1−x) / π
        let one_minus = 1.0 - x;
        if one_minus > GAMMA_MAX_ARG {
            let lg = statrs::function::gamma::ln_gamma(one_minus);
            return sin_pi(x) / PI * lg.exp();
        }
        return sin_pi(x) * gamma_positive(one_minus) / PI;
    }
    match gamma(x) {
        Ok(g) => 1.0 / g,
        Err(_) => 0.0,
    }
}

/// ln|Γ(x)| for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for k in -6..=6 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
        assert_eq!(cos_pi(0.5), 0.0);
    }

    #[test]
    fn small_values() {
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
        assert_eq!(gamma(5.0).unwrap(), 24.0);
        assert!((gamma(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert_eq!(gamma(0.0), Err(Error::Pole(0.0)));
        assert_eq!(gamma(-3.0), Err(Error::Pole(-3.0)));
        assert!(matches!(gamma(200.0), Err(Error::Overflow(_))));
    }

    #[test]
    fn reciprocal() {
        assert_eq!(recip_gamma(-2.0), 0.0);
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(1.0), 1.0);
        assert!((recip_gamma(0.5) - 0.564_189_583_547_756_3).abs() < 1e-15);
        assert!((recip_gamma(-0.5) + 0.282_094_791_773_878_14).abs() < 1e-15);
    }
}
