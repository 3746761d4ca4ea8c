use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("class {class} has {count} member(s), need at least {required}")]
    InsufficientClass {
        class: u8,
        count: usize,
        required: usize,
    },

    #[error("centroid difference has norm {norm:e}; the class centroids already coincide")]
    DegenerateDirection { norm: f64 },

    #[error("fold {fold}: training split contains only class {class}")]
    SingleClassFold { fold: usize, class: u8 },

    #[error("logistic solver did not converge in {iterations} iterations (gradient norm {gradient_norm:e})")]
    NonConvergence {
        iterations: usize,
        gradient_norm: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires a {expected} model")]
    WrongModelKind { expected: &'static str },

    #[error("median pairwise distance is zero; cannot pick a kernel bandwidth")]
    DegenerateBandwidth,

    #[error("empty vocabulary after tokenization")]
    EmptyVocabulary,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
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

    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}
