use thiserror::Error;

use crate::braiding::Classification;
use crate::category_data::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Index tuple or label that does not refer to a simple of the ring.
    #[error("structural error: {0}")]
    Structure(String),

    #[error("ring mismatch: expected classes over `{expected}`, found `{found}`")]
    RingMismatch { expected: String, found: String },

    #[error("simple `{label}` of `{ring}` has no dual")]
    NoDual { ring: String, label: String },

    #[error("fusion ring `{0}` is not commutative; it admits no braiding")]
    NonCommutative(String),

    #[error("invalid data:\n{0}")]
    Invalid(ValidationReport),

    #[error("power iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("`{ring}` is not a fusion ring: dimension character residual {residual:.3e}")]
    CharacterResidual { ring: String, residual: f64 },

    #[error("multiplicity overflow while computing {0}")]
    Overflow(&'static str),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("coefficient is not anomaly-free: {}", .0.failed_flags().join(", "))]
    NotAnomalyFree(Box<Classification>),

    #[error("handle class has FPdim {found}, expected {expected}")]
    HandleInconsistent { expected: f64, found: f64 },

    #[error("base mismatch: `{0}` vs `{1}`")]
    BaseMismatch(String, String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error at {path}: {message}")]
    Semantic { path: String, message: String },
}

impl Error {
    pub(crate) fn semantic(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Semantic {
            path: path.into(),
            message: message.into(),
        }
    }
}
