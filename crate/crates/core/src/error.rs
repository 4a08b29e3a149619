//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("duplicate document id `{0}`")]
    DuplicateDocId(String),

    #[error("document `{id}`: unparseable date `{value}`")]
    InvalidDate { id: String, value: String },

    #[error("document `{0}` has mention or title triples but no date triple")]
    MissingDate(String),

    #[error("document `{id}`: conflicting date triples (`{first}` vs `{second}`)")]
    ConflictingDates {
        id: String,
        first: String,
        second: String,
    },

    #[error("invalid entity IRI: empty after trimming")]
    EmptyEntityIri,

    #[error("document id must be non-empty")]
    EmptyDocId,

    #[error("query `{0}`: entity set empty after category expansion")]
    EmptyEntitySet(String),

    #[error("query `{id}`: time interval start {start} is after end {end}")]
    InvalidTimeInterval {
        id: String,
        start: String,
        end: String,
    },

    #[error("empty graph: no query entity matches any document")]
    EmptyGraph,

    #[error("result set is empty")]
    EmptyResultSet,

    #[error("invalid factor selection `{0}`: expected a non-empty combination of A, B, C")]
    InvalidFactorSelection(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("snapshot format mismatch: expected `{expected}`, found `{found}`")]
    SnapshotFormat { expected: String, found: String },

    #[error("snapshot version mismatch: expected {expected}, found {found}")]
    SnapshotVersion { expected: u32, found: u32 },

    #[error("run for query `{query}`: {message}")]
    InvalidRun { query: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: &str, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
