//! Python bindings: model construction, time kernels, frequency responses,
//! the Mittag-Leffler function, Grünwald-Letnikov derivatives and
//! convolution of sampled histories.

use fracrheo::convolution::{
    strain_from_stress, strain_rate_from_stress, stress_from_strain_via, ConvolutionOutput,
    StressPath,
};
use fracrheo::frac_calc::gl_derivative_native;
use fracrheo::models::{
    evaluate_kernel, frequency_response, time_response, FrequencyKind, KernelKind, RheoModel,
    TimeResponseKernel,
};
use fracrheo::special_functions::{self as sf, MLArgs, DEFAULT_TOL};
use fracrheo::{Error, SampledSignal, SignalRole};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyNotImplementedError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Unsupported(_) => PyNotImplementedError::new_err(msg),
        Error::Overflow(_) | Error::NonConvergence { .. } | Error::Divergence(_) => {
            PyArithmeticError::new_err(msg)
        }
        _ => PyValueError::new_err(msg),
    }
}

fn kernel_kind(name: &str) -> PyResult<KernelKind> {
    KernelKind::ALL
        .into_iter()
        .find(|k| k.label() == name)
        .ok_or_else(|| {
            let names: Vec<_> = KernelKind::ALL.iter().map(|k| k.label()).collect();
            PyValueError::new_err(format!(
                "unknown kernel {name:?}; expected one of {names:?}"
            ))
        })
}

fn frequency_kind(name: &str) -> PyResult<FrequencyKind> {
    FrequencyKind::ALL
        .into_iter()
        .find(|k| k.label() == name)
        .ok_or_else(|| {
            let names: Vec<_> = FrequencyKind::ALL.iter().map(|k| k.label()).collect();
            PyValueError::new_err(format!(
                "unknown frequency function {name:?}; expected one of {names:?}"
            ))
        })
}

/// A rheological model. Build one with the static constructors.
#[pyclass(name = "Model", module = "fracrheo_py", frozen)]
pub struct PyModel {
    inner: RheoModel,
}

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn hookean(g: f64) -> PyResult<Self> {
        wrap(RheoModel::hookean(g))
    }

    #[staticmethod]
    fn newtonian(eta: f64) -> PyResult<Self> {
        wrap(RheoModel::newtonian(eta))
    }

    #[staticmethod]
    fn maxwell(g: f64, eta: f64) -> PyResult<Self> {
        wrap(RheoModel::maxwell(g, eta))
    }

    #[staticmethod]
    fn kelvin_voigt(g: f64, eta: f64) -> PyResult<Self> {
        wrap(RheoModel::kelvin_voigt(g, eta))
    }

    #[staticmethod]
    fn scott_blair(k: f64, q: f64) -> PyResult<Self> {
        wrap(RheoModel::scott_blair(k, q))
    }

    #[staticmethod]
    fn frac_maxwell(kp: f64, p: f64, kq: f64, q: f64) -> PyResult<Self> {
        wrap(RheoModel::frac_maxwell(kp, p, kq, q))
    }

    #[staticmethod]
    fn frac_kelvin_voigt(kp: f64, p: f64, kq: f64, q: f64) -> PyResult<Self> {
        wrap(RheoModel::frac_kelvin_voigt(kp, p, kq, q))
    }

    /// Σ a_m D^{p_m} τ = Σ b_n D^{q_n} γ from lists of (coefficient, order).
    #[staticmethod]
    fn general(a: Vec<(f64, f64)>, b: Vec<(f64, f64)>) -> PyResult<Self> {
        wrap(RheoModel::general(&a, &b))
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.inner.name()
    }

    /// Transfer function G(s) = τ̂(s)/γ̂(s).
    fn transfer(&self, s: Complex64) -> Complex64 {
        self.inner.transfer(s)
    }

    /// One of "modulus", "viscosity", "compliance", "fluidity", "creep" at ω > 0.
    fn frequency(&self, function: &str, omega: f64) -> PyResult<Complex64> {
        let kind = frequency_kind(function)?;
        frequency_response(&self.inner, kind, omega)
            .map(|r| r.value)
            .map_err(to_py)
    }

    /// One of "memory", "relaxation", "fluidity", "creep", "strain-rate".
    fn kernel(&self, function: &str) -> PyResult<PyKernel> {
        let kind = kernel_kind(function)?;
        time_response(&self.inner, kind)
            .map(|inner| PyKernel { inner })
            .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Model({:?})", self.inner)
    }
}

fn wrap(model: fracrheo::Result<RheoModel>) -> PyResult<PyModel> {
    model.map(|inner| PyModel { inner }).map_err(to_py)
}

/// A time-response function: delta-type terms at t = 0 plus a sampled part.
#[pyclass(name = "Kernel", module = "fracrheo_py", frozen)]
pub struct PyKernel {
    inner: TimeResponseKernel,
}

#[pymethods]
impl PyKernel {
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind.label()
    }

    #[getter]
    fn provenance(&self) -> String {
        self.inner.provenance.clone()
    }

    /// (coefficient, order) of each c·d^order δ(t) term.
    #[getter]
    fn singular(&self) -> Vec<(f64, f64)> {
        self.inner
            .singular
            .iter()
            .map(|s| (s.coefficient, s.order))
            .collect()
    }

    fn __call__(&self, t: f64) -> f64 {
        self.inner.eval(t)
    }

    /// Values at `times` and the integer-order delta terms left out of them.
    fn sample(&self, times: Vec<f64>) -> (Vec<f64>, Vec<(f64, f64)>) {
        let s = evaluate_kernel(&self.inner, &times);
        let excluded = s
            .excluded
            .iter()
            .map(|t| (t.coefficient, t.order))
            .collect();
        (s.values, excluded)
    }

    fn __repr__(&self) -> String {
        format!(
            "Kernel(kind={:?}, provenance={:?})",
            self.inner.kind.label(),
            self.inner.provenance
        )
    }
}

/// E_{α,β}(z) for real z.
#[pyfunction]
#[pyo3(signature = (alpha, beta, z, tol = DEFAULT_TOL))]
fn mittag_leffler(alpha: f64, beta: f64, z: f64, tol: f64) -> PyResult<f64> {
    let args = MLArgs::new(alpha, beta, z).map_err(to_py)?;
    sf::mittag_leffler(args, tol).map_err(to_py)
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    sf::gamma(x).map_err(to_py)
}

#[pyfunction]
fn recip_gamma(x: f64) -> f64 {
    sf::recip_gamma(x)
}

/// Grünwald-Letnikov derivative of order q of samples on j·dt.
#[pyfunction]
fn gl_derivative(values: Vec<f64>, dt: f64, q: f64) -> PyResult<Vec<f64>> {
    if q.is_nan() || q < 0.0 {
        return Err(PyValueError::new_err("order must be non-negative"));
    }
    let sig = SampledSignal::new(dt, values, SignalRole::Strain).map_err(to_py)?;
    Ok(gl_derivative_native(&sig, q))
}

/// Output samples and the (amplitude, order) impulses at t = 0.
type SampledWithImpulses = (Vec<f64>, Vec<(f64, u32)>);

/// Convolves a history sampled on j·dt with a model kernel.
///
/// `direction` is "stress-from-strain", "strain-from-stress" or
/// "strainrate-from-stress". Stress from strain can go through the relaxation
/// modulus (default) or the memory function (`via_memory=True`). Returns the
/// sampled output and the (amplitude, order) impulses at t = 0.
#[pyfunction]
#[pyo3(signature = (model, values, dt, direction, step_amplitude = 0.0, via_memory = false))]
fn convolve(
    model: &PyModel,
    values: Vec<f64>,
    dt: f64,
    direction: &str,
    step_amplitude: f64,
    via_memory: bool,
) -> PyResult<SampledWithImpulses> {
    let role = if direction == "stress-from-strain" {
        SignalRole::Strain
    } else {
        SignalRole::Stress
    };
    let sig = SampledSignal::with_step(dt, values, role, step_amplitude).map_err(to_py)?;
    let m = &model.inner;
    let out: ConvolutionOutput = match direction {
        "stress-from-strain" => {
            let path = if via_memory {
                StressPath::Memory
            } else {
                StressPath::Relaxation
            };
            stress_from_strain_via(m, &sig, path)
        }
        "strain-from-stress" => strain_from_stress(m, &sig),
        "strainrate-from-stress" => strain_rate_from_stress(m, &sig),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown direction {other:?}"
            )))
        }
    }
    .map_err(to_py)?;
    let impulses = out
        .impulses
        .iter()
        .map(|i| (i.amplitude, i.order))
        .collect();
    Ok((out.signal.values, impulses))
}

#[pymodule]
fn fracrheo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModel>()?;
    m.add_class::<PyKernel>()?;
    m.add_function(wrap_pyfunction!(mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(recip_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gl_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(convolve, m)?)?;
    Ok(())
}
