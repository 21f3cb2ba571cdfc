use std::path::PathBuf;

use crate::algebra::Grade;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch between `{left}` and `{right}`")]
    GridMismatch {
        left: &'static str,
        right: &'static str,
    },

    #[error("operand {operand} of {operation} has nonzero {grades:?} components; expected a pure vector or pseudovector")]
    MixedGrade {
        operation: &'static str,
        operand: usize,
        grades: Vec<Grade>,
    },

    #[error("{relation}: octonic and classical paths disagree by {discrepancy:.3e} (tolerance {tolerance:.3e})")]
    PathDisagreement {
        relation: &'static str,
        discrepancy: f64,
        tolerance: f64,
    },

    #[error("{0} requires a time derivative that was not supplied")]
    MissingDerivative(&'static str),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical abort at step {step} (t = {time}): {message}")]
    NumericalAbort {
        step: usize,
        time: f64,
        message: String,
    },

    #[error("malformed snapshot: {0}")]
    Snapshot(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
