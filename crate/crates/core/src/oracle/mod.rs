//! Numerov shooting solver for the radial equation, independent of the
//! closed-form and iteration routes, and the route comparison built on it.

mod compare;
mod grid;
mod numerov;
mod operator;

pub use compare::{compare_routes, RouteCell, RouteOptions, RouteRow};
pub use grid::{GridMode, RadialGrid, HALF_LINE_MAX_START, MIN_STEPS};
pub use numerov::{numerov_shoot, numerov_spectrum, numerov_state, ShootingResult, RESIDUAL_TOL};
pub use operator::{Centrifugal, DwsWell, HulthenWell, RadialPotential, SquareWell};
