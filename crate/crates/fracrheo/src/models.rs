//! Model catalog: springpot-based constitutive models, their complex
//! frequency responses and their causal time-response kernels.

use crate::error::{Error, Result};
use crate::frac_calc::{extract_singularities, ml_frac_derivative, MLTerm, SingularTerm};
use crate::special_functions::{cos_pi, ml_order_zero, sin_pi};
use num_complex::Complex64;

/// Strictly positive, finite material constant (modulus, viscosity, inertance…).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coefficient(f64);

impl Coefficient {
    pub fn new(v: f64) -> Result<Self> {
        if v > 0.0 && v.is_finite() {
            Ok(Self(v))
        } else {
            Err(Error::InvalidParameter(format!(
                "coefficients must be positive and finite, got {v}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Differentiation order in [0, 2]: spring (0), dashpot (1), inerter (2).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(q: f64) -> Result<Self> {
        if (0.0..=2.0).contains(&q) {
            Ok(Self(q))
        } else {
            Err(Error::InvalidParameter(format!(
                "orders must lie in [0, 2], got {q}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RheoModel {
    Hookean {
        g: Coefficient,
    },
    Newtonian {
        eta: Coefficient,
    },
    KelvinVoigt {
        g: Coefficient,
        eta: Coefficient,
    },
    Maxwell {
        g: Coefficient,
        eta: Coefficient,
    },
    ScottBlair {
        k: Coefficient,
        q: Order,
    },
    /// Two springpots in series, p < q.
    FracMaxwell {
        kp: Coefficient,
        p: Order,
        kq: Coefficient,
        q: Order,
    },
    /// Two springpots in parallel. Either order may be the larger one and
    /// equal orders collapse to a single springpot.
    FracKelvinVoigt {
        kp: Coefficient,
        p: Order,
        kq: Coefficient,
        q: Order,
    },
    /// Σ a_m D^{p_m} τ = Σ b_n D^{q_n} γ, frequency domain only.
    GeneralFractional {
        a: Vec<(Coefficient, Order)>,
        b: Vec<(Coefficient, Order)>,
    },
}

/// Reduced form every time-domain computation works on.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Canonical {
    Springpot {
        k: f64,
        q: f64,
    },
    Series {
        kp: f64,
        p: f64,
        kq: f64,
        q: f64,
    },
    /// Parallel pair with p < q.
    Parallel {
        kp: f64,
        p: f64,
        kq: f64,
        q: f64,
    },
}

impl RheoModel {
    pub fn hookean(g: f64) -> Result<Self> {
        Ok(Self::Hookean {
            g: Coefficient::new(g)?,
        })
    }

    pub fn newtonian(eta: f64) -> Result<Self> {
        Ok(Self::Newtonian {
            eta: Coefficient::new(eta)?,
        })
    }

    pub fn kelvin_voigt(g: f64, eta: f64) -> Result<Self> {
        Ok(Self::KelvinVoigt {
            g: Coefficient::new(g)?,
            eta: Coefficient::new(eta)?,
        })
    }

    pub fn maxwell(g: f64, eta: f64) -> Result<Self> {
        Ok(Self::Maxwell {
            g: Coefficient::new(g)?,
            eta: Coefficient::new(eta)?,
        })
    }

    pub fn scott_blair(k: f64, q: f64) -> Result<Self> {
        Ok(Self::ScottBlair {
            k: Coefficient::new(k)?,
            q: Order::new(q)?,
        })
    }

    pub fn frac_maxwell(kp: f64, p: f64, kq: f64, q: f64) -> Result<Self> {
        if !(p < q) {
            return Err(Error::InvalidParameter(format!(
                "fractional Maxwell needs p < q, got p = {p}, q = {q}"
            )));
        }
        Ok(Self::FracMaxwell {
            kp: Coefficient::new(kp)?,
            p: Order::new(p)?,
            kq: Coefficient::new(kq)?,
            q: Order::new(q)?,
        })
    }

    pub fn frac_kelvin_voigt(kp: f64, p: f64, kq: f64, q: f64) -> Result<Self> {
        Ok(Self::FracKelvinVoigt {
            kp: Coefficient::new(kp)?,
            p: Order::new(p)?,
            kq: Coefficient::new(kq)?,
            q: Order::new(q)?,
        })
    }

    pub fn general(a: &[(f64, f64)], b: &[(f64, f64)]) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidParameter(
                "general model needs at least one stress and one strain term".into(),
            ));
        }
        let conv = |v: &[(f64, f64)]| -> Result<Vec<(Coefficient, Order)>> {
            v.iter()
                .map(|&(c, o)| Ok((Coefficient::new(c)?, Order::new(o)?)))
                .collect()
        };
        Ok(Self::GeneralFractional {
            a: conv(a)?,
            b: conv(b)?,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Hookean { .. } => "hookean",
            Self::Newtonian { .. } => "newtonian",
            Self::KelvinVoigt { .. } => "kelvin_voigt",
            Self::Maxwell { .. } => "maxwell",
            Self::ScottBlair { .. } => "scott_blair",
            Self::FracMaxwell { .. } => "frac_maxwell",
            Self::FracKelvinVoigt { .. } => "frac_kelvin_voigt",
            Self::GeneralFractional { .. } => "general",
        }
    }

    /// Parameter names with their SI units. Units are informational only.
    pub fn parameter_units(&self) -> Vec<(String, String)> {
        let unit = |q: f64| {
            if q == 0.0 {
                "Pa".to_string()
            } else if q == 1.0 {
                "Pa·s".to_string()
            } else {
                format!("Pa·s^{q}")
            }
        };
        let pair = |n: &str, q: f64| (n.to_string(), unit(q));
        match self {
            Self::Hookean { .. } => vec![pair("G", 0.0)],
            Self::Newtonian { .. } => vec![pair("eta", 1.0)],
            Self::KelvinVoigt { .. } | Self::Maxwell { .. } => {
                vec![pair("G", 0.0), pair("eta", 1.0)]
            }
            Self::ScottBlair { q, .. } => vec![pair("K", q.0), ("q".into(), "1".into())],
            Self::FracMaxwell { p, q, .. } | Self::FracKelvinVoigt { p, q, .. } => vec![
                pair("Kp", p.0),
                ("p".into(), "1".into()),
                pair("Kq", q.0),
                ("q".into(), "1".into()),
            ],
            Self::GeneralFractional { a, b } => {
                let mut v: Vec<_> = a
                    .iter()
                    .enumerate()
                    .map(|(m, (_, o))| (format!("a_{m}"), format!("s^{}", o.0)))
                    .collect();
                v.extend(
                    b.iter()
                        .enumerate()
                        .map(|(n, (_, o))| (format!("b_{n}"), unit(o.0))),
                );
                v
            }
        }
    }

    fn canonical(&self) -> Result<Canonical> {
        use Canonical::*;
        Ok(match *self {
            Self::Hookean { g } => Springpot { k: g.0, q: 0.0 },
            Self::Newtonian { eta } => Springpot { k: eta.0, q: 1.0 },
            Self::KelvinVoigt { g, eta } => Parallel {
                kp: g.0,
                p: 0.0,
                kq: eta.0,
                q: 1.0,
            },
            Self::Maxwell { g, eta } => Series {
                kp: g.0,
                p: 0.0,
                kq: eta.0,
                q: 1.0,
            },
            Self::ScottBlair { k, q } => Springpot { k: k.0, q: q.0 },
            Self::FracMaxwell { kp, p, kq, q } => Series {
                kp: kp.0,
                p: p.0,
                kq: kq.0,
                q: q.0,
            },
            Self::FracKelvinVoigt { kp, p, kq, q } => {
                let (kp, p, kq, q) = (kp.0, p.0, kq.0, q.0);
                if p == q {
                    Springpot { k: kp + kq, q }
                } else if p < q {
                    Parallel { kp, p, kq, q }
                } else {
                    Parallel {
                        kp: kq,
                        p: q,
                        kq: kp,
                        q: p,
                    }
                }
            }
            Self::GeneralFractional { .. } => {
                return Err(Error::Unsupported(
                    "the general model has no time-domain kernels".into(),
                ))
            }
        })
    }

    fn is_classical(&self) -> bool {
        matches!(
            self,
            Self::Hookean { .. }
                | Self::Newtonian { .. }
                | Self::KelvinVoigt { .. }
                | Self::Maxwell { .. }
        )
    }

    /// G*(s) = τ(s)/γ(s), the transfer function in the Laplace variable.
    /// On the imaginary axis it is the complex dynamic modulus; for real s > 0,
    /// G*(s)/s is the Laplace transform of the relaxation modulus.
    pub fn transfer(&self, s: Complex64) -> Complex64 {
        match self {
            Self::GeneralFractional { a, b } => {
                let num: Complex64 = b.iter().map(|(c, o)| c.0 * spow(s, o.0)).sum();
                let den: Complex64 = a.iter().map(|(c, o)| c.0 * spow(s, o.0)).sum();
                num / den
            }
            _ => match self
                .canonical()
                .expect("non-general models have a canonical form")
            {
                Canonical::Springpot { k, q } => k * spow(s, q),
                Canonical::Series { kp, p, kq, q } => {
                    (1.0 / (kp * spow(s, p)) + 1.0 / (kq * spow(s, q))).inv()
                }
                Canonical::Parallel { kp, p, kq, q } => kp * spow(s, p) + kq * spow(s, q),
            },
        }
    }
}

/// s^q on the principal branch, exact in phase on the positive real and
/// imaginary half-axes: (iω)^q = ω^q (cos qπ/2 + i sin qπ/2).
pub fn spow(s: Complex64, q: f64) -> Complex64 {
    if q == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    if s.re == 0.0 && s.im > 0.0 {
        let m = s.im.powf(q);
        return Complex64::new(m * cos_pi(q / 2.0), m * sin_pi(q / 2.0));
    }
    if s.im == 0.0 && s.re > 0.0 {
        return Complex64::new(s.re.powf(q), 0.0);
    }
    s.powf(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyKind {
    DynamicModulus,
    DynamicViscosity,
    DynamicCompliance,
    DynamicFluidity,
    ComplexCreep,
}

impl FrequencyKind {
    pub const ALL: [FrequencyKind; 5] = [
        Self::DynamicModulus,
        Self::DynamicViscosity,
        Self::DynamicCompliance,
        Self::DynamicFluidity,
        Self::ComplexCreep,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::DynamicModulus => "modulus",
            Self::DynamicViscosity => "viscosity",
            Self::DynamicCompliance => "compliance",
            Self::DynamicFluidity => "fluidity",
            Self::ComplexCreep => "creep",
        }
    }

    /// Defining relation to the transfer function, for output headers.
    pub fn provenance(self) -> &'static str {
        match self {
            Self::DynamicModulus => "eq8",
            Self::DynamicViscosity => "eq15",
            Self::DynamicCompliance => "eq11",
            Self::DynamicFluidity => "eq18",
            Self::ComplexCreep => "eq22",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexResponse {
    pub omega: f64,
    pub value: Complex64,
    pub kind: FrequencyKind,
}

pub fn frequency_response(
    model: &RheoModel,
    kind: FrequencyKind,
    omega: f64,
) -> Result<ComplexResponse> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "frequency must be positive and finite, got {omega}"
        )));
    }
    let iw = Complex64::new(0.0, omega);
    let g = model.transfer(iw);
    let value = match kind {
        FrequencyKind::DynamicModulus => g,
        FrequencyKind::DynamicViscosity => g / iw,
        FrequencyKind::DynamicCompliance => g.inv(),
        FrequencyKind::DynamicFluidity => iw / g,
        FrequencyKind::ComplexCreep => g.inv() / iw,
    };
    Ok(ComplexResponse { omega, value, kind })
}

pub fn dynamic_modulus(model: &RheoModel, omega: f64) -> Result<ComplexResponse> {
    frequency_response(model, FrequencyKind::DynamicModulus, omega)
}

pub fn dynamic_viscosity(model: &RheoModel, omega: f64) -> Result<ComplexResponse> {
    frequency_response(model, FrequencyKind::DynamicViscosity, omega)
}

pub fn dynamic_compliance(model: &RheoModel, omega: f64) -> Result<ComplexResponse> {
    frequency_response(model, FrequencyKind::DynamicCompliance, omega)
}

pub fn dynamic_fluidity(model: &RheoModel, omega: f64) -> Result<ComplexResponse> {
    frequency_response(model, FrequencyKind::DynamicFluidity, omega)
}

pub fn complex_creep(model: &RheoModel, omega: f64) -> Result<ComplexResponse> {
    frequency_response(model, FrequencyKind::ComplexCreep, omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Memory,
    RelaxationModulus,
    ImpulseFluidity,
    CreepCompliance,
    ImpulseStrainRate,
}

impl KernelKind {
    pub const ALL: [KernelKind; 5] = [
        Self::Memory,
        Self::RelaxationModulus,
        Self::ImpulseFluidity,
        Self::CreepCompliance,
        Self::ImpulseStrainRate,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::Memory => "memory",
            Self::RelaxationModulus => "relaxation",
            Self::ImpulseFluidity => "fluidity",
            Self::CreepCompliance => "creep",
            Self::ImpulseStrainRate => "strain-rate",
        }
    }
}

/// Σ singular + Σ regular, zero for t < 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeResponseKernel {
    pub kind: KernelKind,
    /// Ordered by decreasing order.
    pub singular: Vec<SingularTerm>,
    pub regular: Vec<MLTerm>,
    /// Label of the closed form the kernel was built from, e.g. "eq88".
    pub provenance: String,
}

impl TimeResponseKernel {
    fn build(kind: KernelKind, provenance: impl Into<String>, parts: Vec<Part>) -> Self {
        let mut singular: Vec<SingularTerm> = Vec::new();
        let mut regular = Vec::new();
        for part in parts {
            match part {
                Part::Singular(s) => match singular.iter_mut().find(|x| x.order == s.order) {
                    Some(x) => x.coefficient += s.coefficient,
                    None => singular.push(s),
                },
                Part::Regular(r) => regular.push(r),
            }
        }
        singular.retain(|s| s.coefficient != 0.0);
        singular.sort_by(|a, b| b.order.total_cmp(&a.order));
        regular.retain(|r| r.coefficient != 0.0);
        Self {
            kind,
            singular,
            regular,
            provenance: provenance.into(),
        }
    }

    /// Pointwise value for t ≠ 0: regular terms plus non-integer delta
    /// derivatives as power laws. Integer-order deltas carry no pointwise value.
    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let reg: f64 = self.regular.iter().map(|r| r.eval(t)).sum();
        if t == 0.0 {
            let diverging = self.singular.iter().any(|s| !s.is_integer_order());
            return if diverging { f64::INFINITY } else { reg };
        }
        reg + self.singular.iter().map(|s| s.eval(t)).sum::<f64>()
    }

    /// δ, δ′, δ″… terms, which sampling excludes.
    pub fn integer_singular(&self) -> Vec<SingularTerm> {
        self.singular
            .iter()
            .copied()
            .filter(SingularTerm::is_integer_order)
            .collect()
    }
}

/// Sampled kernel values on an arbitrary grid plus the excluded distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSamples {
    pub t: Vec<f64>,
    pub values: Vec<f64>,
    pub excluded: Vec<SingularTerm>,
}

pub fn evaluate_kernel(kernel: &TimeResponseKernel, t_grid: &[f64]) -> KernelSamples {
    KernelSamples {
        t: t_grid.to_vec(),
        values: t_grid.iter().map(|&t| kernel.eval(t)).collect(),
        excluded: kernel.integer_singular(),
    }
}

enum Part {
    Singular(SingularTerm),
    Regular(MLTerm),
}

/// c t^{β−1}/Γ(β), read as the delta derivative of order −β when β ≤ 0.
fn power(c: f64, beta: f64) -> Part {
    if beta > 0.0 {
        Part::Regular(MLTerm::canonical(c, 1.0, beta, 0.0))
    } else {
        Part::Singular(SingularTerm {
            coefficient: c,
            order: -beta,
        })
    }
}

/// A canonical ML term, with any non-integrable head turned into deltas.
fn regularized(term: MLTerm) -> Vec<Part> {
    let (sing, reg) = extract_singularities(&term);
    sing.into_iter()
        .map(Part::Singular)
        .chain(std::iter::once(Part::Regular(reg)))
        .collect()
}

fn with_derivative(d: (Vec<SingularTerm>, MLTerm)) -> Vec<Part> {
    d.0.into_iter()
        .map(Part::Singular)
        .chain(std::iter::once(Part::Regular(d.1)))
        .collect()
}

pub fn time_response(model: &RheoModel, kind: KernelKind) -> Result<TimeResponseKernel> {
    let canon = model.canonical()?;
    let classical = model.is_classical();
    let label = |fractional: String| {
        if classical {
            "table2".to_string()
        } else {
            fractional
        }
    };
    use Canonical::*;
    use KernelKind::*;
    let kernel = match (canon, kind) {
        (Springpot { k, q }, Memory) => {
            TimeResponseKernel::build(kind, label("eq36".into()), vec![power(k, -q)])
        }
        (Springpot { k, q }, RelaxationModulus) => TimeResponseKernel::build(
            kind,
            label(if q <= 1.0 { "eq49" } else { "eq50" }.into()),
            vec![power(k, 1.0 - q)],
        ),
        (Springpot { k, q }, ImpulseFluidity) => {
            TimeResponseKernel::build(kind, label("eq47".into()), vec![power(1.0 / k, q)])
        }
        (Springpot { k, q }, CreepCompliance) => {
            TimeResponseKernel::build(kind, label("eq55".into()), vec![power(1.0 / k, q + 1.0)])
        }
        (Springpot { k, q }, ImpulseStrainRate) => TimeResponseKernel::build(
            kind,
            label(if q < 1.0 { "eq52" } else { "eq53" }.into()),
            vec![power(1.0 / k, q - 1.0)],
        ),

        (Series { kp, p, kq, q }, Memory) => {
            let a = q - p;
            let term = MLTerm::canonical(kp, a, a, kp / kq);
            let tag = if p == 0.0 && q == 1.0 {
                "eq75"
            } else if p == 0.0 && q == 2.0 {
                "eq80"
            } else {
                "eq72-74"
            };
            TimeResponseKernel::build(
                kind,
                label(tag.into()),
                with_derivative(ml_frac_derivative(&term, q)?),
            )
        }
        (Series { kp, p, kq, q }, RelaxationModulus) => {
            let tag = if p == 0.0 {
                "eq89"
            } else if q == 1.0 {
                "eq90"
            } else {
                "eq88"
            };
            let term = MLTerm::canonical(kp, q - p, 1.0 - p, kp / kq);
            TimeResponseKernel::build(kind, label(tag.into()), regularized(term))
        }
        (Series { kp, p, kq, q }, ImpulseFluidity) => TimeResponseKernel::build(
            kind,
            label("eq83".into()),
            vec![power(1.0 / kp, p), power(1.0 / kq, q)],
        ),
        (Series { kp, p, kq, q }, CreepCompliance) => TimeResponseKernel::build(
            kind,
            label("eq96".into()),
            vec![power(1.0 / kp, p + 1.0), power(1.0 / kq, q + 1.0)],
        ),
        (Series { kp, p, kq, q }, ImpulseStrainRate) => TimeResponseKernel::build(
            kind,
            label("eq92".into()),
            vec![power(1.0 / kp, p - 1.0), power(1.0 / kq, q - 1.0)],
        ),

        (Parallel { kp, p, kq, q }, Memory) => TimeResponseKernel::build(
            kind,
            label("eq100".into()),
            vec![power(kp, -p), power(kq, -q)],
        ),
        (Parallel { kp, p, kq, q }, RelaxationModulus) => TimeResponseKernel::build(
            kind,
            label(if q == 1.0 { "eq115" } else { "eq113" }.into()),
            vec![power(kp, 1.0 - p), power(kq, 1.0 - q)],
        ),
        (Parallel { kp, p, kq, q }, ImpulseFluidity) => {
            if p == 1.0 {
                // Dashpot η = kp in parallel with a springpot of order q > 1:
                // φ = (1/η)[1 − E_{q−1}(−(η/K_q) t^{q−1})].
                TimeResponseKernel::build(
                    kind,
                    label("eq112".into()),
                    vec![
                        Part::Regular(MLTerm::canonical(1.0 / kp, 1.0, 1.0, 0.0)),
                        Part::Regular(MLTerm::canonical(-1.0 / kp, q - 1.0, 1.0, kp / kq)),
                    ],
                )
            } else {
                let tag = if q == 1.0 { "eq110" } else { "eq106" };
                TimeResponseKernel::build(
                    kind,
                    label(tag.into()),
                    regularized(MLTerm::canonical(1.0 / kq, q - p, q, kp / kq)),
                )
            }
        }
        (Parallel { kp, p, kq, q }, CreepCompliance) => TimeResponseKernel::build(
            kind,
            label(if p == 0.0 { "eq129" } else { "eq128" }.into()),
            regularized(MLTerm::canonical(1.0 / kq, q - p, q + 1.0, kp / kq)),
        ),
        (Parallel { kp, p, kq, q }, ImpulseStrainRate) => {
            let tag = if q > 1.0 {
                "eq119"
            } else if q == 1.0 {
                "eq124"
            } else {
                "eq120-121"
            };
            let phi = MLTerm::canonical(1.0 / kq, q - p, q, kp / kq);
            TimeResponseKernel::build(
                kind,
                label(tag.into()),
                with_derivative(ml_frac_derivative(&phi, 1.0)?),
            )
        }
    };
    Ok(kernel)
}

pub fn memory_function(model: &RheoModel) -> Result<TimeResponseKernel> {
    time_response(model, KernelKind::Memory)
}

pub fn relaxation_modulus(model: &RheoModel) -> Result<TimeResponseKernel> {
    time_response(model, KernelKind::RelaxationModulus)
}

pub fn impulse_fluidity(model: &RheoModel) -> Result<TimeResponseKernel> {
    time_response(model, KernelKind::ImpulseFluidity)
}

pub fn creep_compliance(model: &RheoModel) -> Result<TimeResponseKernel> {
    time_response(model, KernelKind::CreepCompliance)
}

pub fn impulse_strain_rate(model: &RheoModel) -> Result<TimeResponseKernel> {
    time_response(model, KernelKind::ImpulseStrainRate)
}

/// Creep compliance of a spring G in parallel with a springpot (K_q, q), in
/// the mixed-dielectric form (1/G)[1 − E_q(−(G/K_q) t^q)]. It equals the
/// kernel returned by [`creep_compliance`] and serves as a cross-check.
pub fn kv_creep_spring_form(model: &RheoModel) -> Result<TimeResponseKernel> {
    match model.canonical()? {
        Canonical::Parallel {
            kp: g,
            p: 0.0,
            kq,
            q,
        } => Ok(TimeResponseKernel::build(
            KernelKind::CreepCompliance,
            "eq131",
            vec![
                Part::Regular(MLTerm::canonical(1.0 / g, 1.0, 1.0, 0.0)),
                Part::Regular(MLTerm::canonical(-1.0 / g, q, 1.0, g / kq)),
            ],
        )),
        _ => Err(Error::Unsupported(
            "the spring form needs a parallel model with a zero-order element".into(),
        )),
    }
}

/// Springpot (K_p, p) in parallel with a dashpot η at the branch point p = 1:
/// impulse fluidity constants of the two closed forms, each written through
/// E_0(z) = 1/(1 − z) and therefore defined only where its argument lies
/// inside the unit disc. Both equal 1/(η + K_p) when available.
pub fn kv_fluidity_branch_values(kp: f64, eta: f64) -> (Option<f64>, Option<f64>) {
    let low = ml_order_zero(-kp / eta).ok().map(|e| e / eta);
    let high = ml_order_zero(-eta / kp).ok().map(|e| (1.0 - e) / eta);
    (low, high)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn springpot_modulus_half_order() {
        let m = RheoModel::scott_blair(1.0, 0.5).unwrap();
        let g = dynamic_modulus(&m, 1.0).unwrap().value;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(g.re, r, 1e-15) && close(g.im, r, 1e-15));
        assert!(dynamic_modulus(&m, 0.0).is_err());
    }

    #[test]
    fn series_compliance_is_sum() {
        let m = RheoModel::frac_maxwell(2.0, 0.3, 1.0, 0.8).unwrap();
        let c = dynamic_compliance(&m, 2.0).unwrap().value;
        let iw = Complex64::new(0.0, 2.0);
        let want = 0.5 * iw.powf(-0.3) + iw.powf(-0.8);
        assert!((c - want).norm() < 1e-14 * want.norm());
    }

    #[test]
    fn validation() {
        assert!(RheoModel::scott_blair(1.0, 2.5).is_err());
        assert!(RheoModel::scott_blair(-1.0, 0.5).is_err());
        assert!(RheoModel::frac_maxwell(1.0, 0.8, 1.0, 0.3).is_err());
        assert!(
            memory_function(&RheoModel::general(&[(1.0, 0.0)], &[(1.0, 0.5)]).unwrap()).is_err()
        );
    }

    #[test]
    fn maxwell_memory_is_delta_minus_exponential() {
        let m = RheoModel::frac_maxwell(2.0, 0.0, 6.0, 1.0).unwrap();
        let k = memory_function(&m).unwrap();
        assert_eq!(
            k.singular,
            vec![SingularTerm {
                coefficient: 2.0,
                order: 0.0
            }]
        );
        let lam = 3.0;
        for t in [0.1, 1.0, 4.0] {
            assert!(close(k.eval(t), -2.0 / lam * (-t / lam).exp(), 1e-13));
        }
    }

    #[test]
    fn fluidity_branches_meet() {
        let (lo, hi) = kv_fluidity_branch_values(0.5, 2.0);
        assert!(close(lo.unwrap(), 1.0 / 2.5, 1e-15));
        assert!(hi.is_none());
        let m = RheoModel::frac_kelvin_voigt(0.5, 1.0, 2.0, 1.0).unwrap();
        let phi = impulse_fluidity(&m).unwrap();
        assert!(close(phi.eval(3.0), 1.0 / 2.5, 1e-15));
    }
}
