//! Closed-form radial functions: terminating hypergeometric series,
//! normalization and shape diagnostics.
//!
//! For `q > 0` the series argument `-qz` is negative, so every term of
//! `2F1(-n, b; c; -qz)` with `b, c > 0` is positive and excited states carry
//! no nodes on `r > 0`. [`shape_report`] counts sign changes as a diagnostic
//! only.

mod quadrature;
mod radial;
mod special;

pub use quadrature::{integrate_adaptive, simpson, Quadrature};
pub use radial::{
    normalize, radial_wavefunction_unnormalized, shape_report, RadialMap, RadialWavefunction, ShapeReport,
};
pub use special::{dws_polynomial, gauss_2f1_terminating, general_form_solution, pochhammer, GeneralFormParams};
