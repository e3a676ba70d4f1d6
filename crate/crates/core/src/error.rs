use thiserror::Error;

/// Errors raised by the numerical kernels and the table/report I/O.
#[derive(Debug, Error)]
pub enum LabError {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A query beyond the range covered by a precomputed table.
    #[error("range error: {0}")]
    Range(String),

    /// A documented precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A value that must be configured before use is missing.
    #[error("state error: {0}")]
    State(String),

    /// A numerical procedure failed to do what it guarantees (e.g. a bracket
    /// that should contain a root does not).
    #[error("internal error: {0}")]
    Internal(String),

    #[error("format error in {path}: {message}")]
    Format { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> LabError {
    LabError::Domain(msg.into())
}

pub(crate) fn ensure_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {v}")))
    }
}
