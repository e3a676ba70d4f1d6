use ladderlab::LabError;
use thiserror::Error;

/// Outcome of a failed command, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum Failure {
    /// A check did not hold (exit 1).
    #[error("assertion failed: {0}")]
    Assertion(String),

    /// Bad flags, configuration or a request outside what the inputs cover
    /// (exit 2).
    #[error("usage error: {0}")]
    Usage(String),

    /// Reading or writing files (exit 3).
    #[error("i/o error: {0}")]
    Io(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Assertion(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        let msg = e.to_string();
        match e {
            LabError::Domain(_) | LabError::Range(_) | LabError::Precondition(_) | LabError::State(_) => {
                Failure::Usage(msg)
            }
            LabError::Internal(_) => Failure::Assertion(msg),
            LabError::Format { .. } | LabError::Io(_) | LabError::Csv(_) | LabError::Json(_) => Failure::Io(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.to_string())
    }
}
