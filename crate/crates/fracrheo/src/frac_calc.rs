//! Fractional calculus: the Grünwald-Letnikov derivative, the Riemann-Liouville
//! integral, and the closed-form algebra of power-law × Mittag-Leffler terms,
//! including the extraction of fractional delta-derivatives.

use crate::error::{Error, Result};
use crate::signal::SampledSignal;
use crate::special_functions::{gamma, ml, recip_gamma};
use rayon::prelude::*;

/// coefficient · t^power · E_{α,β}(−rate · t^α), zero for t < 0.
///
/// `rate = 0` is a pure power law, where E_{α,β}(0) = 1/Γ(β). The term is in
/// canonical form when `power = β − 1`; the integral and derivative rules
/// below act on that form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLTerm {
    pub coefficient: f64,
    pub power: f64,
    pub alpha: f64,
    pub beta: f64,
    pub rate: f64,
}

/// coefficient · d^order δ(t − 0)/dt^order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularTerm {
    pub coefficient: f64,
    pub order: f64,
}

const CANONICAL_EPS: f64 = 1e-12;

impl MLTerm {
    pub fn new(coefficient: f64, power: f64, alpha: f64, beta: f64, rate: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(rate >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "MLTerm needs alpha > 0 and rate >= 0 (alpha = {alpha}, rate = {rate})"
            )));
        }
        if ![coefficient, power, alpha, beta, rate]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::InvalidParameter(
                "MLTerm fields must be finite".into(),
            ));
        }
        Ok(Self {
            coefficient,
            power,
            alpha,
            beta,
            rate,
        })
    }

    /// c · t^{β−1} E_{α,β}(−rate t^α)
    pub fn canonical(coefficient: f64, alpha: f64, beta: f64, rate: f64) -> Self {
        Self {
            coefficient,
            power: beta - 1.0,
            alpha,
            beta,
            rate,
        }
    }

    /// c · t^m, stored canonically as (c Γ(m+1)) t^m / Γ(m+1) when m > −1.
    pub fn power_law(coefficient: f64, m: f64) -> Self {
        match gamma(m + 1.0) {
            Ok(g) if m > -1.0 => Self {
                coefficient: coefficient * g,
                power: m,
                alpha: 1.0,
                beta: m + 1.0,
                rate: 0.0,
            },
            _ => Self {
                coefficient,
                power: m,
                alpha: 1.0,
                beta: 1.0,
                rate: 0.0,
            },
        }
    }

    pub fn is_canonical(&self) -> bool {
        (self.power - (self.beta - 1.0)).abs() <= CANONICAL_EPS * (1.0 + self.beta.abs())
    }

    /// Locally integrable at t = 0.
    pub fn is_integrable(&self) -> bool {
        self.power > -1.0 || self.coefficient == 0.0
    }

    /// Value at t. For t = 0 and a negative power the documented sentinel
    /// `±∞` (sign of the leading behaviour) is returned instead of an error.
    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 || self.coefficient == 0.0 {
            return 0.0;
        }
        if t == 0.0 {
            let lead = self.coefficient * recip_gamma(self.beta);
            return if self.power > 0.0 {
                0.0
            } else if self.power == 0.0 {
                lead
            } else if lead == 0.0 {
                0.0
            } else {
                f64::INFINITY.copysign(lead)
            };
        }
        let e = if self.rate == 0.0 {
            recip_gamma(self.beta)
        } else {
            ml(self.alpha, self.beta, -self.rate * t.powf(self.alpha))
        };
        self.coefficient * t.powf(self.power) * e
    }

    /// Rewrites a pure power law into canonical form (constant folding).
    fn folded(&self) -> Result<Self> {
        if self.is_canonical() {
            return Ok(*self);
        }
        if self.rate != 0.0 {
            return Err(Error::InvalidParameter(
                "closed-form fractional calculus needs a canonical term t^(beta-1) E_{alpha,beta}"
                    .into(),
            ));
        }
        if self.power <= -1.0 {
            return Err(Error::Divergence(format!(
                "t^{} is not locally integrable",
                self.power
            )));
        }
        let c = self.coefficient * recip_gamma(self.beta) * gamma(self.power + 1.0)?;
        Ok(Self {
            coefficient: c,
            power: self.power,
            alpha: self.alpha,
            beta: self.power + 1.0,
            rate: 0.0,
        })
    }
}

impl SingularTerm {
    pub fn new(coefficient: f64, order: f64) -> Result<Self> {
        if !(order >= 0.0) || !order.is_finite() || !coefficient.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "invalid delta-derivative order {order}"
            )));
        }
        Ok(Self { coefficient, order })
    }

    pub fn is_integer_order(&self) -> bool {
        self.order == self.order.round()
    }

    /// For t > 0 a non-integer-order delta derivative is the power law
    /// coefficient / (Γ(−order) t^{1+order}); integer orders have no pointwise value.
    pub fn as_power_law(&self) -> Option<MLTerm> {
        if self.is_integer_order() {
            None
        } else {
            Some(MLTerm::canonical(self.coefficient, 1.0, -self.order, 0.0))
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.as_power_law() {
            Some(p) if t > 0.0 => p.eval(t),
            _ => 0.0,
        }
    }
}

/// I^q of a term: power += q, β += q.
pub fn ml_frac_integral(term: &MLTerm, q: f64) -> Result<MLTerm> {
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "integral order must be positive, got {q}"
        )));
    }
    let t = term.folded()?;
    Ok(MLTerm {
        power: t.power + q,
        beta: t.beta + q,
        ..t
    })
}

/// Peels delta-derivatives off a canonical term whose β ≤ 0 using
/// E_{α,β}(z) = 1/Γ(β) + z E_{α,α+β}(z), until the remaining β is positive.
/// Singular terms come out in decreasing order of strength.
pub fn extract_singularities(term: &MLTerm) -> (Vec<SingularTerm>, MLTerm) {
    let mut singular = Vec::new();
    let mut t = *term;
    while t.beta <= 0.0 && t.coefficient != 0.0 {
        // t^{β−1}/Γ(β) with β ≤ 0 is d^{−β}δ.
        singular.push(SingularTerm {
            coefficient: t.coefficient,
            order: -t.beta,
        });
        if t.rate == 0.0 {
            t.coefficient = 0.0;
            break;
        }
        t = MLTerm {
            coefficient: -t.coefficient * t.rate,
            power: t.power + t.alpha,
            beta: t.beta + t.alpha,
            ..t
        };
    }
    (singular, t)
}

/// D^q of a term: β −= q, power −= q, then singularity extraction.
pub fn ml_frac_derivative(term: &MLTerm, q: f64) -> Result<(Vec<SingularTerm>, MLTerm)> {
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "derivative order must be positive, got {q}"
        )));
    }
    let t = term.folded()?;
    Ok(extract_singularities(&MLTerm {
        power: t.power - q,
        beta: t.beta - q,
        ..t
    }))
}

/// w_0 = 1, w_k = w_{k−1}(k − 1 − q)/k.
pub fn gl_weights(q: f64, n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n);
    let mut prev = 1.0;
    for k in 0..n {
        if k > 0 {
            prev = prev * (k as f64 - 1.0 - q) / k as f64;
        }
        w.push(prev);
    }
    w
}

/// Input of [`gl_derivative`].
pub enum GlInput<'a> {
    Callable(&'a (dyn Fn(f64) -> f64 + Sync)),
    Sampled(&'a SampledSignal),
}

/// h^{−q} Σ_{k=0}^{n−1} w_k f(t − k h), h = t/n, at every t of `t_grid`.
pub fn gl_derivative(f: GlInput<'_>, q: f64, t_grid: &[f64], n_terms: usize) -> Result<Vec<f64>> {
    if n_terms < 2 || !(q >= 0.0) {
        return Err(Error::InvalidParameter(
            "gl_derivative needs n_terms >= 2 and q >= 0".into(),
        ));
    }
    let w = gl_weights(q, n_terms);
    match f {
        GlInput::Callable(f) => Ok(t_grid
            .par_iter()
            .map(|&t| {
                if t <= 0.0 {
                    return 0.0;
                }
                let h = t / n_terms as f64;
                let s: f64 = w
                    .iter()
                    .enumerate()
                    .map(|(k, wk)| wk * f(t - k as f64 * h))
                    .sum();
                s * h.powf(-q)
            })
            .collect()),
        GlInput::Sampled(sig) => {
            let mut idx = Vec::with_capacity(t_grid.len());
            for &t in t_grid {
                let j = (t / sig.dt).round();
                let stride = j / n_terms as f64;
                if t < 0.0
                    || (t - j * sig.dt).abs() > 1e-9 * sig.dt
                    || stride != stride.round()
                    || j as usize >= sig.len()
                {
                    return Err(Error::GridMismatch(format!(
                        "t = {t}: step {} does not divide t/n with n = {n_terms}",
                        sig.dt
                    )));
                }
                idx.push((j as usize, stride as usize));
            }
            Ok(idx
                .par_iter()
                .map(|&(j, stride)| {
                    if j == 0 {
                        return 0.0;
                    }
                    let h = stride as f64 * sig.dt;
                    let s: f64 = w
                        .iter()
                        .enumerate()
                        .map(|(k, wk)| wk * sig.total(j - k * stride))
                        .sum();
                    s * h.powf(-q)
                })
                .collect())
        }
    }
}

/// GL derivative at every sample of a signal with h = dt (n = j at t_j),
/// including the declared step. At t = 0 the value is taken as 0 when the
/// signal starts at rest, otherwise as dt^{−q}·x(0).
pub fn gl_derivative_native(sig: &SampledSignal, q: f64) -> Vec<f64> {
    let n = sig.len();
    let w = gl_weights(q, n.max(1));
    let scale = sig.dt.powf(-q);
    (0..n)
        .into_par_iter()
        .map(|j| {
            if j == 0 {
                let x0 = sig.total(0);
                return if x0 == 0.0 { 0.0 } else { scale * x0 };
            }
            let s: f64 = (0..j).map(|k| w[k] * sig.total(j - k)).sum();
            s * scale
        })
        .collect()
}

/// (1/Γ(q)) ∫₀ᵗ f(ξ)(t−ξ)^{q−1} dξ by product integration: f is replaced by its
/// piecewise-linear interpolant on nodes graded towards ξ = 0 and the moments of
/// (t−ξ)^{q−1} are integrated exactly.
pub fn rl_integral<F: Fn(f64) -> f64>(f: F, q: f64, t: f64, quad_points: usize) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "integral order must be positive, got {q}"
        )));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if !(t > 0.0) || quad_points < 2 {
        return Err(Error::InvalidParameter(
            "rl_integral needs t > 0 and quad_points >= 2".into(),
        ));
    }
    const GRADING: i32 = 3;
    let n = quad_points;
    let nodes: Vec<f64> = (0..=n)
        .map(|i| t * (i as f64 / n as f64).powi(GRADING))
        .collect();
    let vals: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    if let Some(i) = vals.iter().position(|v| !v.is_finite()) {
        return Err(Error::Divergence(format!(
            "integrand is not finite at xi = {}",
            nodes[i]
        )));
    }
    let mut sum = 0.0;
    for i in 0..n {
        let (xa, xb) = (nodes[i], nodes[i + 1]);
        let h = xb - xa;
        let (i0, i1) = panel_moments(t - xa, h, q);
        // f ≈ f_a + (f_b − f_a)(ξ − xa)/h on the panel.
        sum += vals[i] * i0 + (vals[i + 1] - vals[i]) / h * i1;
    }
    Ok(sum * recip_gamma(q))
}

/// ∫₀ʰ (u − s)^{q−1} ds and ∫₀ʰ s (u − s)^{q−1} ds for a panel ending at
/// distance u − h from t. Short panels far from t would cancel
/// catastrophically in the closed form, so they use the binomial series in h/u.
fn panel_moments(u: f64, h: f64, q: f64) -> (f64, f64) {
    let x = h / u;
    if x <= 0.25 {
        let (mut i0, mut i1) = (0.0, 0.0);
        let mut c = 1.0; // binom(q − 1, k)(−x)^k
        for k in 0..60 {
            let kf = k as f64;
            let (a, b) = (c * x / (kf + 1.0), c * x * x / (kf + 2.0));
            i0 += a;
            i1 += b;
            if a.abs() <= 1e-17 * i0.abs() && b.abs() <= 1e-17 * i1.abs() {
                break;
            }
            c *= -(q - 1.0 - kf) / (kf + 1.0) * x;
        }
        (i0 * u.powf(q), i1 * u.powf(q + 1.0))
    } else {
        let ub = u - h;
        let m0 = |v: f64| v.powf(q) / q;
        let m1 = |v: f64| v.powf(q + 1.0) / (q + 1.0);
        let i0 = m0(u) - m0(ub);
        (i0, u * i0 - (m1(u) - m1(ub)))
    }
}
