use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} has size {size}, above the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: BigUint,
        cap: usize,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("matrix is singular")]
    Singular,

    #[error("psi has a pole at x = {0}")]
    Pole(String),

    #[error("eigenvalues are not strictly ordered for t={t}, k={k}, v={v}")]
    Degenerate { t: usize, k: usize, v: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn cap(what: &'static str, size: impl Into<BigUint>, cap: usize) -> Self {
        Error::SizeCap {
            what,
            size: size.into(),
            cap,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
