use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {what}: {reason}")]
    Validation { what: &'static str, reason: String },

    #[error("brute-force evolution supports at most {limit} bath qubits, got {qubits}")]
    Capacity { qubits: usize, limit: usize },

    #[error("matrix is not Hermitian (largest asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix has eigenvalue {eigenvalue:.3e}, below the roundoff floor")]
    NotPositive { eigenvalue: f64 },

    #[error("matrix is not X-shaped: entry ({row}, {col}) has modulus {modulus:.3e}")]
    NotXShaped {
        row: usize,
        col: usize,
        modulus: f64,
    },

    /// Carries the inner error in its message rather than as a `source`, so
    /// the diagnostic stays on one line.
    #[error("row {row} (axis value {value}): {cause}")]
    Row {
        row: usize,
        value: f64,
        cause: Box<Error>,
    },
}

impl Error {
    pub(crate) fn validation(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation {
            what,
            reason: reason.into(),
        }
    }
}
