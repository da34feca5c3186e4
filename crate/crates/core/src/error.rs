use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while building, loading or evaluating recordings.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-uniform time grid at sample {index}: expected step {expected}, found {found}")]
    NonUniformGrid { index: usize, expected: f64, found: f64 },

    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    #[error("non-finite value in {what} at sample {index}")]
    NonFinite { what: &'static str, index: usize },

    #[error("invalid sample {index}: {reason}")]
    InvalidSample { index: usize, reason: String },

    #[error("agent radius must be positive, got {0}")]
    InvalidRadius(f64),

    #[error("trajectories `{a}` and `{b}` are not on the same time grid")]
    GridMismatch { a: String, b: String },

    #[error("duplicate agent id `{0}`")]
    DuplicateAgent(String),

    #[error("unknown agent id `{0}`")]
    UnknownAgent(String),

    #[error("recording needs at least {need} agents, got {got}")]
    TooFewAgents { need: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
