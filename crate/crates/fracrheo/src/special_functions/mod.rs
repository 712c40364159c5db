//! Gamma, reciprocal gamma and the two-parameter Mittag-Leffler function.

mod gamma;
mod mittag_leffler;
pub mod quad;

pub use gamma::{cos_pi, gamma, ln_gamma, recip_gamma, sin_pi, GAMMA_MAX_ARG};
pub use mittag_leffler::{
    mittag_leffler, ml, ml_asymptotic, ml_order_zero, ml_recurrence_shift, MLArgs, RecurrenceSplit,
    DEFAULT_TOL,
};
