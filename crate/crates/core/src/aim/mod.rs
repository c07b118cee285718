//! Numeric asymptotic iteration.
//!
//! For `y'' = λ0(x) y' + s0(x) y` the engine runs
//! `λk = λ'(k-1) + s(k-1) + λ0 λ(k-1)`, `sk = s'(k-1) + s0 λ(k-1)` on truncated
//! Taylor jets at a fixed point `x0`, and locates energies where the
//! quantization determinant `δk = λk s(k-1) - λ(k-1) sk` changes sign.

mod dws;
mod engine;
mod jet;

pub use dws::{dws_aim_energy, dws_aim_problem, AlphaBranch, DwsAimProblem, DEFAULT_Z0, DwsAimSettings};
pub use engine::{aim_eigenvalue, aim_iterate, AimProblem, AimRoot, AimScalar, AimSettings, AimTrace};
pub use jet::{JetScalar, TaylorJet};
