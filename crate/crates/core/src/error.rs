use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid normal coordinates: {0}")]
    InvalidNormal(String),
    #[error("curve must be connected (found {0} components)")]
    Disconnected(usize),
    #[error("curve must be essential")]
    Inessential,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid lens space parameters p={p}, q={q}: {reason}")]
    InvalidLens { p: i64, q: i64, reason: String },
    #[error("word exceeds the length cap of {cap} letters")]
    WordOverflow { cap: usize },
    #[error("no normal representative found for {0} up to weight {1}")]
    NoNormalRepresentative(String, u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("cache mismatch: {0}")]
    CacheMismatch(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
