//! Slow, independent reference implementations used by the tests and the
//! `validate` command. Nothing here is on a hot path.

mod conv;
mod fixture;
mod gl;
mod ml;

pub use conv::convolution_reference;
pub use fixture::{ml_fixture_records, FixtureRecord};
pub use gl::{gl_reference, gl_weight_gamma_quotient, gl_weights_exact, GL_REFERENCE_MAX_TERMS};
pub use ml::{ml_reference, ml_reference_with_method, MlReferenceMethod};
