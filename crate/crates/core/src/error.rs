use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::RingSpec;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingSpec, right: RingSpec },

    #[error("{value} is not invertible in {ring}")]
    NotInvertible { value: BigInt, ring: RingSpec },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("invalid token `{token}`: {reason}")]
    InvalidToken { token: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("invalid json: {0}")]
    Json(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
