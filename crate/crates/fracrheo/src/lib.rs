//! Fractional-derivative rheology: Scott-Blair, fractional Maxwell and
//! fractional Kelvin-Voigt models, their five time-response and five
//! frequency-response functions, Boltzmann-superposition convolution, and
//! brute-force reference oracles.

// Parameter checks are written as `!(x > 0.0)` on purpose so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod convolution;
pub mod error;
pub mod frac_calc;
pub mod models;
#[cfg(feature = "oracles")]
pub mod oracles;
pub mod signal;
pub mod special_functions;
pub mod validation;

pub use error::{Error, Result};
pub use signal::{SampledSignal, SignalRole};
