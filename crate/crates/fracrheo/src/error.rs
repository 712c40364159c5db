use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at x = {0}")]
    Pole(f64),

    #[error("gamma function overflows at x = {0}")]
    Overflow(f64),

    #[error("Mittag-Leffler evaluation did not reach tolerance: best estimate {best}, achieved error {achieved}")]
    NonConvergence { best: f64, achieved: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("non-uniform grid at sample {index}")]
    NonUniformGrid { index: usize },

    #[error("non-finite value at sample {index}")]
    NonFinite { index: usize },

    #[error("integrand is not integrable: {0}")]
    Divergence(String),

    #[error("Laplace tail too large: s*T = {st} is below the required 14")]
    TailTooFat { st: f64 },

    #[error("non-causal input: {0}")]
    NonCausal(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
