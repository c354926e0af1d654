use thiserror::Error;

use crate::cube::{CoordSet, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate {coord} out of range 1..={dim}")]
    CoordOutOfRange { coord: usize, dim: usize },

    #[error("dimension {dim} unsupported (allowed {min}..={max})")]
    Dimension { dim: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular: rank deficiency at pivot column {column}")]
    Singular { column: usize },

    #[error("basis {basis} has a singular basis matrix; M is not a P-matrix")]
    NotPMatrix { basis: CoordSet },

    #[error("degenerate right-hand side: basis {basis} gives a zero at coordinate {coord}")]
    Degenerate { basis: CoordSet, coord: usize },

    #[error("Morris instances need an odd dimension n >= 3, got {0}")]
    Parity(usize),

    #[error("{what} is exhaustive and capped at n = {limit}, got n = {dim}")]
    Capability {
        what: &'static str,
        dim: usize,
        limit: usize,
    },

    #[error("basis solution is negative at coordinate {coord}; not an LCP solution")]
    NotASolution { coord: usize },

    #[error("inconsistent orientation of edge {vertex} -- coordinate {coord}")]
    MalformedOrientation { vertex: Vertex, coord: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Dependency(String),

    #[error("generation failed: {0}")]
    Generation(String),

    #[error("oracle error at vertex {vertex}: {source}")]
    Oracle {
        vertex: Vertex,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
