use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by selection, fitting and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is rank deficient (smallest/largest singular value ratio {ratio:e})")]
    RankDeficient { ratio: f64 },

    #[error("information matrix is numerically singular (condition estimate {condition:e})")]
    SingularInformation { condition: f64 },

    #[error("removing row {row} makes the information matrix singular (leverage {leverage})")]
    DegenerateRemoval { row: usize, leverage: f64 },

    #[error("every candidate removal is degenerate; pool cannot be pruned further")]
    AllRemovalsDegenerate,

    #[error("pool of {requested} rows requested but only {available} rows are available")]
    PoolTooSmall { requested: usize, available: usize },

    #[error("{0} predictors exceed the all-subset limit of 20")]
    TooManyPredictors(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at data row {row}, column '{column}': {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("column '{0}' not found in header")]
    MissingColumn(String),

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
