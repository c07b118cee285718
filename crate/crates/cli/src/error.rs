use thiserror::Error;

/// Failure of one command, carrying its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config entries or parameter values. Exit 1.
    #[error("{0}")]
    Usage(String),
    /// The numerics ran but did not converge. Exit 2.
    #[error("{0}")]
    NonConvergence(String),
    /// No state in the requested window. Exit 3.
    #[error("{0}")]
    NotFound(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::NonConvergence(_) | CliError::Io(_) => 2,
            CliError::NotFound(_) => 3,
        }
    }
}

impl From<dws_core::Error> for CliError {
    fn from(e: dws_core::Error) -> Self {
        use dws_core::Error as E;
        let msg = e.to_string();
        match e {
            E::InvalidParameter { .. } | E::Domain(_) | E::EmptyGrid | E::JetMismatch(..) => CliError::Usage(msg),
            E::NoSignChange { .. } | E::NoRealSolution(_) | E::NotNormalizable(_) | E::NotApplicable(_) => {
                CliError::NotFound(msg)
            }
            E::NonConvergence { .. }
            | E::Quadrature(_)
            | E::Overflow(_)
            | E::PochhammerPole(_)
            | E::ZeroConstantTerm
            | E::InsufficientOrder { .. }
            | E::Internal(_) => CliError::NonConvergence(msg),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e.to_string()))
    }
}
