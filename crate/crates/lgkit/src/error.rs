use num::BigInt;
use thiserror::Error;

/// Crate-wide error type.
///
/// Every failure mode maps to a stable machine-readable kind and a process
/// exit code (used by the `lgkit` binary).
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("non-admissible weights: {0}")]
    NonAdmissible(String),

    #[error("group order {order} exceeds enumeration bound {bound}")]
    BoundExceeded { order: BigInt, bound: u64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("singular matrix")]
    Singular,

    #[error("inconsistent linear system")]
    Inconsistent,

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable identifier for machine-readable error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::NotInvertible(_) => "not_invertible",
            Error::NonAdmissible(_) => "non_admissible_weights",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::Internal(_) => "internal_consistency",
            Error::Singular => "singular_matrix",
            Error::Inconsistent => "inconsistent_system",
            Error::Invalid(_) => "invalid_input",
        }
    }

    /// Exit code contract: 1 parse, 2 not invertible / non-admissible,
    /// 3 bound exceeded, 4 internal consistency or invalid use.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            Error::NotInvertible(_) | Error::NonAdmissible(_) | Error::Singular => 2,
            Error::BoundExceeded { .. } => 3,
            Error::Internal(_) | Error::Inconsistent | Error::Invalid(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
