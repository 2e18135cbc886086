use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: negative edge weight {weight}")]
    NegativeWeight {
        path: PathBuf,
        line: usize,
        weight: f64,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("scan aborted after {records} records: {source}")]
    PartialRead {
        records: u64,
        #[source]
        source: std::io::Error,
    },

    #[error("density of an empty node set is undefined")]
    EmptySet,

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("infeasible size floor: k = {k} but the graph has {n} nodes")]
    Infeasible { k: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("expected a {expected} edge stream")]
    Mode { expected: &'static str },

    #[error("instance too large for {what}: {size} exceeds the limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

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
