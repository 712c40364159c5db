//! Command-line front end: model configs, CSV in and out, and the
//! `eval`, `freq`, `convolve` and `validate` commands.
//!
//! Exit codes: 0 success, 1 validation failure, 2 config or usage error,
//! 3 unsupported model/function pair, 4 non-uniform input grid,
//! 5 non-finite input values.

use crate::convolution::{
    strain_from_stress, strain_rate_from_stress, stress_from_strain, ConvolutionOutput,
};
use crate::error::{Error, Result};
use crate::models::*;
use crate::signal::{SampledSignal, SignalRole};
use crate::validation::{run_suite, Suite};
use clap::{Parser, Subcommand, ValueEnum};
use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_GRID: i32 = 4;
pub const EXIT_NON_FINITE: i32 = 5;

/// Environment variable replacing the identity/limit validation tolerance.
pub const TOL_ENV: &str = "FRACRHEO_TOL";

#[derive(Parser, Debug)]
#[command(
    name = "fracrheo",
    version,
    about = "Time and frequency responses of fractional rheological models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a time-response function on a grid.
    Eval {
        /// Model config file (`-` for stdin).
        config: PathBuf,
        #[arg(long, value_enum)]
        function: TimeFunction,
        #[arg(long, default_value_t = 0.01)]
        tmin: f64,
        #[arg(long, default_value_t = 10.0)]
        tmax: f64,
        #[arg(long, default_value_t = 256)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Spacing::Log)]
        spacing: Spacing,
        /// Emit dimensionless time and value; tmin/tmax are then dimensionless too.
        #[arg(long)]
        normalized: bool,
    },
    /// Evaluate a frequency-response function; columns omega, Re, Im.
    Freq {
        config: PathBuf,
        #[arg(long, value_enum)]
        function: FreqFunction,
        #[arg(long, default_value_t = 0.01)]
        wmin: f64,
        #[arg(long, default_value_t = 100.0)]
        wmax: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Convolve a sampled history (CSV `t,value`) with a model kernel.
    Convolve {
        config: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Jump of the input at t = 0, added on top of the sampled values.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        step_amplitude: f64,
    },
    /// Run the built-in validation suites.
    Validate {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Machine-readable summary instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TimeFunction {
    Memory,
    Relaxation,
    Fluidity,
    Creep,
    StrainRate,
}

impl TimeFunction {
    fn kind(self) -> KernelKind {
        match self {
            Self::Memory => KernelKind::Memory,
            Self::Relaxation => KernelKind::RelaxationModulus,
            Self::Fluidity => KernelKind::ImpulseFluidity,
            Self::Creep => KernelKind::CreepCompliance,
            Self::StrainRate => KernelKind::ImpulseStrainRate,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreqFunction {
    Modulus,
    Viscosity,
    Compliance,
    Fluidity,
    Creep,
}

impl FreqFunction {
    fn kind(self) -> FrequencyKind {
        match self {
            Self::Modulus => FrequencyKind::DynamicModulus,
            Self::Viscosity => FrequencyKind::DynamicViscosity,
            Self::Compliance => FrequencyKind::DynamicCompliance,
            Self::Fluidity => FrequencyKind::DynamicFluidity,
            Self::Creep => FrequencyKind::ComplexCreep,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    StressFromStrain,
    StrainFromStress,
    StrainrateFromStress,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsupported(_) => EXIT_UNSUPPORTED,
        Error::NonUniformGrid { .. } | Error::GridMismatch(_) => EXIT_GRID,
        Error::NonFinite { .. } => EXIT_NON_FINITE,
        _ => EXIT_CONFIG,
    }
}

/// Parses a `key = value` model description. `#` starts a comment. The
/// general model takes repeated `a = coefficient, order` rows for the stress
/// side and `b = coefficient, order` rows for the strain side.
pub fn parse_model_config(text: &str) -> Result<RheoModel> {
    let mut scalars: HashMap<String, (f64, usize)> = HashMap::new();
    let mut rows: HashMap<&'static str, Vec<(f64, f64)>> = HashMap::new();
    let mut model: Option<(String, usize)> = None;
    let parse_num = |s: &str, line: usize| -> Result<f64> {
        s.trim().parse::<f64>().map_err(|_| Error::Parse {
            line,
            message: format!("{:?} is not a number", s.trim()),
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
            line,
            message: format!("expected `key = value`, got {content:?}"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "model" => {
                if model.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "model given twice".into(),
                    });
                }
                model = Some((value.to_string(), line));
            }
            "a" | "b" => {
                let parts: Vec<&str> = value.split(',').collect();
                if parts.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: format!("`{key}` rows are `coefficient, order`"),
                    });
                }
                let row = (parse_num(parts[0], line)?, parse_num(parts[1], line)?);
                rows.entry(if key == "a" { "a" } else { "b" })
                    .or_default()
                    .push(row);
            }
            "G" | "eta" | "K" | "q" | "Kp" | "p" | "Kq" => {
                if scalars
                    .insert(key.to_string(), (parse_num(value, line)?, line))
                    .is_some()
                {
                    return Err(Error::Parse {
                        line,
                        message: format!("`{key}` given twice"),
                    });
                }
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let (name, model_line) = model.ok_or(Error::Parse {
        line: 0,
        message: "missing `model = …` line".into(),
    })?;
    let needed: &[&str] = match name.as_str() {
        "hookean" => &["G"],
        "newtonian" => &["eta"],
        "kelvin_voigt" | "maxwell" => &["G", "eta"],
        "scott_blair" => &["K", "q"],
        "frac_maxwell" | "frac_kelvin_voigt" => &["Kp", "p", "Kq", "q"],
        "general" => &[],
        other => {
            return Err(Error::Parse {
                line: model_line,
                message: format!("unknown model `{other}`"),
            })
        }
    };
    for (key, (_, line)) in &scalars {
        if !needed.contains(&key.as_str()) {
            return Err(Error::Parse {
                line: *line,
                message: format!("`{key}` does not apply to model `{name}`"),
            });
        }
    }
    if name != "general" && !rows.is_empty() {
        return Err(Error::Parse {
            line: model_line,
            message: "`a`/`b` rows only apply to the general model".into(),
        });
    }
    let get = |k: &str| -> Result<f64> {
        scalars.get(k).map(|v| v.0).ok_or_else(|| Error::Parse {
            line: model_line,
            message: format!("model `{name}` needs `{k}`"),
        })
    };
    let built = match name.as_str() {
        "hookean" => RheoModel::hookean(get("G")?),
        "newtonian" => RheoModel::newtonian(get("eta")?),
        "kelvin_voigt" => RheoModel::kelvin_voigt(get("G")?, get("eta")?),
        "maxwell" => RheoModel::maxwell(get("G")?, get("eta")?),
        "scott_blair" => RheoModel::scott_blair(get("K")?, get("q")?),
        "frac_maxwell" => RheoModel::frac_maxwell(get("Kp")?, get("p")?, get("Kq")?, get("q")?),
        "frac_kelvin_voigt" => {
            RheoModel::frac_kelvin_voigt(get("Kp")?, get("p")?, get("Kq")?, get("q")?)
        }
        _ => RheoModel::general(
            rows.get("a").map(Vec::as_slice).unwrap_or(&[]),
            rows.get("b").map(Vec::as_slice).unwrap_or(&[]),
        ),
    };
    built.map_err(|e| match e {
        Error::InvalidParameter(message) => Error::Parse {
            line: model_line,
            message,
        },
        other => other,
    })
}

/// 17 significant digits: re-parsing gives back the same f64.
pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Reads `t,value` rows; `#` comments and a non-numeric header line are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    let mut seen_data = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        let nums: std::result::Result<Vec<f64>, _> =
            fields.iter().map(|f| f.parse::<f64>()).collect();
        match nums {
            Ok(v) if v.len() >= 2 => {
                rows.push((v[0], v[1]));
                seen_data = true;
            }
            Ok(_) => {
                return Err(Error::Parse {
                    line,
                    message: "expected two columns `t,value`".into(),
                })
            }
            Err(_) if !seen_data && rows.is_empty() => continue,
            Err(_) => {
                return Err(Error::Parse {
                    line,
                    message: format!("cannot parse {content:?}"),
                })
            }
        }
    }
    Ok(rows)
}

fn describe_model(model: &RheoModel) -> String {
    let params = model
        .parameter_units()
        .into_iter()
        .map(|(n, u)| format!("{n} [{u}]"))
        .collect::<Vec<_>>()
        .join(", ");
    format!("{model:?}; parameters: {params}")
}

fn describe_singular(k: &TimeResponseKernel) -> String {
    let ex = k.integer_singular();
    if ex.is_empty() {
        "none".into()
    } else {
        ex.iter()
            // Adding 0.0 turns an extracted −0 into 0 for display.
            .map(|s| format!("{} * d^{} delta(t)", fmt_num(s.coefficient), s.order + 0.0))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Characteristic time and value scale of the dimensionless figure axes.
///
/// Time is divided by τ = (K_q/K_p)^{1/(q−p)} of the two elements (1 for a
/// single springpot). Values are scaled with the lower-order element (K, r):
/// memory M τ^{1+r}/K, relaxation G τ^r/K, fluidity K τ^{1−r} φ, creep
/// K τ^{−r} J, strain rate K τ^{2−r} ψ.
pub fn normalization(model: &RheoModel, kind: KernelKind) -> Result<(f64, f64, String)> {
    let (k, r, tau) = match model {
        RheoModel::Hookean { g } => (g.get(), 0.0, 1.0),
        RheoModel::Newtonian { eta } => (eta.get(), 1.0, 1.0),
        RheoModel::ScottBlair { k, q } => (k.get(), q.get(), 1.0),
        RheoModel::Maxwell { g, eta } | RheoModel::KelvinVoigt { g, eta } => {
            (g.get(), 0.0, eta.get() / g.get())
        }
        RheoModel::FracMaxwell { kp, p, kq, q } | RheoModel::FracKelvinVoigt { kp, p, kq, q } => {
            let (mut a, mut b) = ((kp.get(), p.get()), (kq.get(), q.get()));
            if a.1 > b.1 {
                std::mem::swap(&mut a, &mut b);
            }
            let tau = if a.1 == b.1 {
                1.0
            } else {
                (b.0 / a.0).powf(1.0 / (b.1 - a.1))
            };
            (a.0, a.1, tau)
        }
        RheoModel::GeneralFractional { .. } => {
            return Err(Error::Unsupported(
                "the general model has no time-domain kernels".into(),
            ))
        }
    };
    let (scale, text) = match kind {
        KernelKind::Memory => (tau.powf(1.0 + r) / k, "M tau^(1+r)/K"),
        KernelKind::RelaxationModulus => (tau.powf(r) / k, "G tau^r/K"),
        KernelKind::ImpulseFluidity => (k * tau.powf(1.0 - r), "K tau^(1-r) phi"),
        KernelKind::CreepCompliance => (k * tau.powf(-r), "K tau^(-r) J"),
        KernelKind::ImpulseStrainRate => (k * tau.powf(2.0 - r), "K tau^(2-r) psi"),
    };
    Ok((
        tau,
        scale,
        format!(
            "x = t/tau, y = {text}, tau = {}, K = {}, r = {}",
            fmt_num(tau),
            fmt_num(k),
            r
        ),
    ))
}

fn grid(min: f64, max: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if points == 0 || !(max >= min) {
        return Err(Error::InvalidParameter(
            "grid needs points >= 1 and max >= min".into(),
        ));
    }
    if points == 1 {
        return Ok(vec![min]);
    }
    let step = |i: usize| i as f64 / (points - 1) as f64;
    Ok(match spacing {
        Spacing::Linear => {
            if min < 0.0 {
                return Err(Error::InvalidParameter(
                    "linear grids need tmin >= 0".into(),
                ));
            }
            (0..points).map(|i| min + (max - min) * step(i)).collect()
        }
        Spacing::Log => {
            if !(min > 0.0) {
                return Err(Error::InvalidParameter(
                    "log spacing needs a positive minimum".into(),
                ));
            }
            let (a, b) = (min.ln(), max.ln());
            let mut g: Vec<f64> = (0..points).map(|i| (a + (b - a) * step(i)).exp()).collect();
            // exp(ln x) can miss x by an ulp; keep the requested endpoints exact.
            g[0] = min;
            g[points - 1] = max;
            g
        }
    })
}

fn read_text(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read stdin: {e}"),
        })?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse {
        line: 0,
        message: format!("write failed: {e}"),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_eval(
    model: &RheoModel,
    function: TimeFunction,
    tmin: f64,
    tmax: f64,
    points: usize,
    spacing: Spacing,
    normalized: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let kind = function.kind();
    let kernel = time_response(model, kind)?;
    let axis = grid(tmin, tmax, points, spacing)?;
    writeln!(out, "# model: {}", describe_model(model)).map_err(io_err)?;
    writeln!(out, "# function: {}", kind.label()).map_err(io_err)?;
    writeln!(out, "# provenance: {}", kernel.provenance).map_err(io_err)?;
    writeln!(
        out,
        "# excluded singular terms: {}",
        describe_singular(&kernel)
    )
    .map_err(io_err)?;
    let (tau, scale) = if normalized {
        let (tau, scale, text) = normalization(model, kind)?;
        writeln!(out, "# normalized: {text}").map_err(io_err)?;
        (tau, scale)
    } else {
        (1.0, 1.0)
    };
    writeln!(out, "t,value").map_err(io_err)?;
    let times: Vec<f64> = axis.iter().map(|x| x * tau).collect();
    let samples = evaluate_kernel(&kernel, &times);
    for (x, v) in axis.iter().zip(&samples.values) {
        writeln!(out, "{},{}", fmt_num(*x), fmt_num(v * scale)).map_err(io_err)?;
    }
    Ok(())
}

pub fn cmd_freq(
    model: &RheoModel,
    function: FreqFunction,
    wmin: f64,
    wmax: f64,
    points: usize,
    out: &mut dyn Write,
) -> Result<()> {
    let kind = function.kind();
    let axis = grid(wmin, wmax, points, Spacing::Log)?;
    writeln!(out, "# model: {}", describe_model(model)).map_err(io_err)?;
    writeln!(out, "# function: {}", kind.label()).map_err(io_err)?;
    writeln!(out, "# provenance: {}", kind.provenance()).map_err(io_err)?;
    writeln!(out, "omega,re,im").map_err(io_err)?;
    for w in axis {
        let r = frequency_response(model, kind, w)?;
        writeln!(
            out,
            "{},{},{}",
            fmt_num(w),
            fmt_num(r.value.re),
            fmt_num(r.value.im)
        )
        .map_err(io_err)?;
    }
    Ok(())
}

pub fn cmd_convolve(
    model: &RheoModel,
    csv: &str,
    direction: Direction,
    step: f64,
    out: &mut dyn Write,
) -> Result<()> {
    let rows = parse_csv(csv)?;
    let role = match direction {
        Direction::StressFromStrain => SignalRole::Strain,
        _ => SignalRole::Stress,
    };
    let signal = SampledSignal::from_rows(&rows, role, step)?;
    let result: ConvolutionOutput = match direction {
        Direction::StressFromStrain => stress_from_strain(model, &signal)?,
        Direction::StrainFromStress => strain_from_stress(model, &signal)?,
        Direction::StrainrateFromStress => strain_rate_from_stress(model, &signal)?,
    };
    writeln!(out, "# model: {}", describe_model(model)).map_err(io_err)?;
    writeln!(out, "# direction: {direction:?}").map_err(io_err)?;
    writeln!(out, "# scheme: {}", result.scheme).map_err(io_err)?;
    writeln!(out, "# provenance: {}", result.provenance).map_err(io_err)?;
    for imp in &result.impulses {
        writeln!(
            out,
            "# impulse at t=0: {} * d^{} delta(t)",
            fmt_num(imp.amplitude),
            imp.order
        )
        .map_err(io_err)?;
    }
    writeln!(out, "t,value").map_err(io_err)?;
    for (j, v) in result.signal.values.iter().enumerate() {
        writeln!(out, "{},{}", fmt_num(rows[j].0), fmt_num(*v)).map_err(io_err)?;
    }
    Ok(())
}

/// Runs a suite and writes a table or JSON. Returns whether every check passed.
pub fn cmd_validate(
    suite: Suite,
    json: bool,
    tol: Option<f64>,
    out: &mut dyn Write,
) -> Result<bool> {
    let checks = run_suite(suite, tol)?;
    let passed = checks.iter().all(|c| c.passed);
    if json {
        let doc = serde_json::json!({
            "passed": passed,
            "total": checks.len(),
            "failed": checks.iter().filter(|c| !c.passed).count(),
            "checks": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json")).map_err(io_err)?;
    } else {
        for c in &checks {
            writeln!(
                out,
                "{:4}  {:<16} {:<70} measured {:<10.3e} limit {:.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.measured,
                c.tolerance
            )
            .map_err(io_err)?;
        }
        writeln!(
            out,
            "{} of {} checks passed",
            checks.iter().filter(|c| c.passed).count(),
            checks.len()
        )
        .map_err(io_err)?;
    }
    Ok(passed)
}

/// Entry point shared by the binary and tests. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval {
            config,
            function,
            tmin,
            tmax,
            points,
            spacing,
            normalized,
        } => read_text(&config)
            .and_then(|t| parse_model_config(&t))
            .and_then(|m| cmd_eval(&m, function, tmin, tmax, points, spacing, normalized, out))
            .map(|_| EXIT_OK),
        Command::Freq {
            config,
            function,
            wmin,
            wmax,
            points,
        } => read_text(&config)
            .and_then(|t| parse_model_config(&t))
            .and_then(|m| cmd_freq(&m, function, wmin, wmax, points, out))
            .map(|_| EXIT_OK),
        Command::Convolve {
            config,
            input,
            direction,
            step_amplitude,
        } => read_text(&config)
            .and_then(|t| parse_model_config(&t))
            .and_then(|m| {
                let csv = read_text(&input)?;
                cmd_convolve(&m, &csv, direction, step_amplitude, out)
            })
            .map(|_| EXIT_OK),
        Command::Validate { suite, json } => {
            let tol = match std::env::var(TOL_ENV) {
                Ok(v) => match v.parse::<f64>() {
                    Ok(t) if t > 0.0 => Some(t),
                    _ => {
                        let _ =
                            writeln!(err, "error: {TOL_ENV} must be a positive number, got {v:?}");
                        return EXIT_CONFIG;
                    }
                },
                Err(_) => None,
            };
            match suite.parse::<Suite>() {
                Ok(s) => {
                    cmd_validate(s, json, tol, out)
                        .map(|ok| if ok { EXIT_OK } else { EXIT_VALIDATION })
                }
                Err(m) => Err(Error::Parse {
                    line: 0,
                    message: m,
                }),
            }
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
