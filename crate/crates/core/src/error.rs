use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed record ({field}): {reason}")]
    Malformed { line: usize, field: String, reason: String },

    #[error("line {line}: unknown label token {token:?}")]
    UnknownLabel { line: usize, token: String },

    #[error("duplicate requirement id {0:?}")]
    DuplicateId(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("rule {id}: {reason}")]
    Rule { id: String, reason: String },

    #[error("dictionary line {line}: {reason}")]
    Dictionary { line: usize, reason: String },

    #[error("fold {fold} (run {run}) lacks training examples of class {class}")]
    FoldMissingClass { run: usize, fold: usize, class: String },

    #[error("{what}: unsupported format version {found} (expected {expected})")]
    Version { what: String, found: u32, expected: u32 },

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Data errors (bad corpus, bad rule file, degenerate inputs) as opposed to
    /// configuration or usage problems.
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::Config(_) | Error::InvalidArgument(_))
    }
}
