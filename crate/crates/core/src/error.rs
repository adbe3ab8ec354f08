use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("form is not positive definite: {0}")]
    Definiteness(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: String },

    #[error("enumeration needs about {predicted} lattice points, budget is {budget}")]
    Budget { predicted: u64, budget: u64 },

    #[error("series did not reach tolerance {tol:e} before X = {cap}")]
    NonConvergence { tol: f64, cap: f64 },

    #[error("zeta zero index {index} outside the table 1..={len}")]
    ZeroIndex { index: usize, len: usize },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Definiteness(_)
            | Error::Domain(_)
            | Error::Pole { .. }
            | Error::ZeroIndex { .. } => 3,
            Error::Budget { .. } | Error::NonConvergence { .. } => 4,
            Error::Verification(_) => 5,
        }
    }
}
