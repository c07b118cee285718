//! Bound-state toolkit for the deformed Woods-Saxon well.
//!
//! Three independent routes to the same spectrum live side by side:
//!
//! * [`closed_form`]: the analytic energies obtained after replacing the
//!   centrifugal barrier by the Pekeris form,
//! * [`aim`]: a numeric asymptotic-iteration engine driven by truncated
//!   Taylor jets, with an adapter for the hypergeometric form of the radial
//!   equation,
//! * [`oracle`]: Numerov shooting on the radial equation with either the
//!   exact or the approximated centrifugal term.
//!
//! [`wavefunction`] holds the terminating hypergeometric series, the radial
//! functions and their normalization. All energies are in MeV and lengths in
//! fm unless a function says otherwise.

pub mod aim;
pub mod closed_form;
mod error;
pub mod oracle;
pub mod potential;
mod roots;
pub mod wavefunction;

pub use error::{Error, Result};
