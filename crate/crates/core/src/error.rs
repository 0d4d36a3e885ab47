use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} outside of valid range {lo}..={hi}")]
    OutOfRange { index: u64, lo: u64, hi: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("could not allocate {bytes} bytes for {what}")]
    Allocation { what: &'static str, bytes: usize },

    #[error("bad sieve cache {path}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },

    #[error("trivial input: {0}")]
    Trivial(String),

    #[error("positive-entropy system {0} rejected: the union bound is vacuous")]
    PositiveEntropy(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
