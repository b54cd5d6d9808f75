use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty prime range: limit {limit} is below 2")]
    EmptyRange { limit: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{what} {requested} exceeds capacity {capacity}")]
    Capacity {
        what: &'static str,
        requested: u64,
        capacity: u64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("out-of-order prime event: expected index {expected}, got {got}")]
    Sequencing { expected: u64, got: u64 },

    #[error("inequality is only claimed for n >= {min}, got n = {n}")]
    NotClaimed { n: u64, min: u64 },

    #[error("could not certify {0}")]
    Uncertified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
