use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("fitness has not been evaluated")]
    Unevaluated,
    #[error("cannot compare fitness values with different optimization directions")]
    DirectionMismatch,
    #[error("no binding for variable `{0}`")]
    MissingBinding(String),
    #[error("line {line}: {message}")]
    TreeSyntax { line: usize, message: String },
    #[error("line {line}: unknown symbol `{symbol}`")]
    UnknownSymbol { line: usize, symbol: String },
    #[error("line {line}: arity mismatch: {message}")]
    ArityMismatch { line: usize, message: String },
    #[error("invalid vector: {0}")]
    InvalidVector(String),
    #[error("expected a {expected} genome")]
    GenomeKind { expected: &'static str },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid dataset: {0}")]
    Dataset(String),
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error("event subscriber failed: {0}")]
    Hook(String),
    #[error("estimator is not fitted")]
    NotFitted,
    #[error("expected {expected} feature columns, got {actual}")]
    FeatureCount { expected: usize, actual: usize },
    #[error("algorithm has not been evolved yet")]
    NotEvolved,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
