use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vertex {index} out of range for a cycle of {size} vertices")]
    OutOfRange { index: usize, size: usize },

    #[error("cycle must have at least 3 vertices, got {0}")]
    CycleTooSmall(usize),

    #[error("distribution support reaches vertex {vertex}, which is ambiguous relative to start {start} on a cycle of {size}")]
    Wraparound {
        vertex: usize,
        start: usize,
        size: usize,
    },

    #[error("{0} is empty")]
    Empty(&'static str),

    #[error("invalid config field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidConfig {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
