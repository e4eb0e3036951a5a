use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv")]
    Csv(#[from] csv::Error),

    #[error("json")]
    Json(#[from] serde_json::Error),

    #[error("row {row}, column {column}: {message}")]
    Cell {
        row: usize,
        column: String,
        message: String,
    },

    #[error("row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("duplicate ticker {0:?}")]
    DuplicateTicker(String),

    #[error("row {row}: date {date} does not follow the previous date")]
    NonIncreasingDate { row: usize, date: String },

    #[error("need at least {needed} rows, got {got}")]
    TooFewRows { needed: usize, got: usize },

    #[error("series for {0:?} is constant; its rank variance is zero")]
    ConstantSeries(String),

    #[error("need at least {needed} nodes, got {got}")]
    TooFewNodes { needed: usize, got: usize },

    #[error("threshold {0} outside [0, 2]")]
    ThresholdOutOfRange(f64),

    #[error("thresholds must be sorted ascending")]
    UnsortedThresholds,

    #[error("graph has no edges")]
    EdgelessGraph,

    #[error("power iteration did not converge after {iterations} iterations (eigenvalue estimate {eigenvalue})")]
    NotConverged { iterations: usize, eigenvalue: f64 },

    #[error("matrix is not symmetric at ({row}, {column})")]
    NotSymmetric { row: usize, column: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{stage}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}

pub(crate) trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageExt<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|source| Error::Stage {
            stage,
            source: Box::new(source),
        })
    }
}
