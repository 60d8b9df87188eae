use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Dynkin datum {0}")]
    InvalidDatum(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("truncation overflow at delta degree {degree} (cap {cap})")]
    Truncation { degree: i64, cap: i64 },
    #[error("closure did not stabilize within the degree schedule (reached dimension {dim})")]
    NonClosure { dim: usize },
    #[error("cyclicity failure: cyclic vector generates dimension {achieved} of {expected}")]
    NotCyclic { achieved: usize, expected: usize },
    #[error("length additivity fails between factors {0} and {1}")]
    LengthAdditivity(usize, usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
