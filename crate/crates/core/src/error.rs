use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("argument outside the domain of {0}")]
    Domain(&'static str),

    #[error("no real solution: {0}")]
    NoRealSolution(String),

    #[error("quantity not applicable: {0}")]
    NotApplicable(String),

    #[error("jets expanded at different points ({0} vs {1})")]
    JetMismatch(f64, f64),

    #[error("reciprocal of a jet with zero constant term")]
    ZeroConstantTerm,

    #[error("jet order {have} is too small, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("no sign change in bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("iteration did not converge: {reason} (drift {drift:e})")]
    NonConvergence { reason: String, drift: f64 },

    #[error("Pochhammer pole: {0} + k hits zero")]
    PochhammerPole(f64),

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("wavefunction is not normalizable: {0}")]
    NotNormalizable(String),

    #[error("empty grid")]
    EmptyGrid,

    #[error("numerical overflow: {0}")]
    Overflow(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
