use crate::error::{Error, Result};

/// What physical quantity a sampled history carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalRole {
    Strain,
    StrainRate,
    Stress,
    StressRate,
    Kernel,
}

/// A causal history on the uniform grid t_j = j·dt, j = 0..len.
///
/// The represented function is `step_amplitude·U(t) + v(t)`, where `v` is the
/// piecewise-linear interpolant of `values` and must start at zero. A jump at
/// the origin therefore has to be declared through `step_amplitude`; it is never
/// inferred by differentiating samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub dt: f64,
    pub values: Vec<f64>,
    pub role: SignalRole,
    pub step_amplitude: f64,
}

impl SampledSignal {
    pub fn new(dt: f64, values: Vec<f64>, role: SignalRole) -> Result<Self> {
        Self::with_step(dt, values, role, 0.0)
    }

    pub fn with_step(
        dt: f64,
        values: Vec<f64>,
        role: SignalRole,
        step_amplitude: f64,
    ) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "time step must be positive, got {dt}"
            )));
        }
        if !step_amplitude.is_finite() {
            return Err(Error::NonFinite { index: 0 });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            dt,
            values,
            role,
            step_amplitude,
        })
    }

    /// Samples `f` on j·dt, j = 0..n.
    pub fn from_fn<F: Fn(f64) -> f64>(dt: f64, n: usize, role: SignalRole, f: F) -> Result<Self> {
        Self::new(dt, (0..n).map(|j| f(j as f64 * dt)).collect(), role)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.time(j)).collect()
    }

    /// Full sample value including the declared step (right-continuous at 0).
    pub fn total(&self, j: usize) -> f64 {
        self.values[j] + self.step_amplitude
    }

    /// Rejects a sampled jump at t = 0 that was not declared as a step.
    pub(crate) fn require_continuous_start(&self) -> Result<()> {
        match self.values.first() {
            Some(&v0) if v0 != 0.0 => Err(Error::NonCausal(format!(
                "signal starts at {v0}; declare a jump at t = 0 through the step amplitude"
            ))),
            _ => Ok(()),
        }
    }

    /// Builds a signal from (t, value) rows, checking that t starts at 0 and is uniform.
    pub fn from_rows(rows: &[(f64, f64)], role: SignalRole, step_amplitude: f64) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self {
                dt: 1.0,
                values: Vec::new(),
                role,
                step_amplitude,
            });
        }
        if let Some(index) = rows
            .iter()
            .position(|(t, v)| !t.is_finite() || !v.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        if rows[0].0 != 0.0 {
            return Err(Error::NonUniformGrid { index: 0 });
        }
        let dt = if rows.len() > 1 {
            rows[1].0 - rows[0].0
        } else {
            1.0
        };
        if !(dt > 0.0) {
            return Err(Error::NonUniformGrid { index: 1 });
        }
        for (j, (t, _)) in rows.iter().enumerate() {
            let expected = j as f64 * dt;
            if (t - expected).abs() > 1e-9 * dt.max(expected.abs()) {
                return Err(Error::NonUniformGrid { index: j });
            }
        }
        Self::with_step(dt, rows.iter().map(|r| r.1).collect(), role, step_amplitude)
    }
}

/// Second-order first derivative that only looks backwards: the three-point
/// backward stencil from the third sample on. The first two samples use the
/// three-point stencil on samples 0..=2, the earliest data available.
pub(crate) fn derivative(values: &[f64], dt: f64) -> Vec<f64> {
    let n = values.len();
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        2 => {
            let d = (values[1] - values[0]) / dt;
            vec![d, d]
        }
        _ => (0..n)
            .map(|j| match j {
                0 => (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * dt),
                1 => (values[2] - values[0]) / (2.0 * dt),
                _ => (3.0 * values[j] - 4.0 * values[j - 1] + values[j - 2]) / (2.0 * dt),
            })
            .collect(),
    }
}
