//! Error type shared by every layer of the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid functional: {0}")]
    InvalidFunctional(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("semisimple quotient does not split over the base field: {0}")]
    NonSplitSemisimpleQuotient(String),
    #[error("spectrum of the distinguished central element does not split: {0}")]
    NonSplitOmega(String),
    #[error("module is not interlocked at idempotent {idempotent}: {witness}")]
    NotInterlocked { idempotent: usize, witness: String },
    #[error("not a module endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("incompatible q-exponents: {0}")]
    IncompatibleExponents(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_non_split(&self) -> bool {
        matches!(self, Error::NonSplitSemisimpleQuotient(_) | Error::NonSplitOmega(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
