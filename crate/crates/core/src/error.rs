use thiserror::Error;

use crate::exactnum::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("orbit did not close within {max_iter} iterations")]
    PeriodNotFound { max_iter: usize },

    #[error("rho must be -1, 0 or 1 (got {0})")]
    UnsupportedRho(i64),

    #[error("point ({0}) lies on the critical set and belongs to no open tile")]
    CriticalPoint(String),

    #[error("tile address {address} is not valid for case {case}")]
    InvalidAddress { address: String, case: String },

    #[error("level {level} of case {case} has no perfect beads")]
    NoPerfectBeads { case: String, level: u64 },

    #[error("window is empty: need x_min < x_max and y_min < y_max")]
    EmptyWindow,

    #[error("alpha must lie strictly between 0 and pi (got {0})")]
    AlphaOutOfRange(f64),

    #[error("malformed point {text:?}: {reason}")]
    MalformedPoint { text: String, reason: String },

    #[error("malformed scalar: {0}")]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
