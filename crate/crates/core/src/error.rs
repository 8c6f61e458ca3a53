use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid hypersurface: {0}")]
    InvalidHypersurface(String),

    #[error("singular hypersurface: Jacobian ring dimension in degree {degree} is {found}, expected {expected}")]
    Singular { degree: u32, found: usize, expected: usize },

    #[error("socle undefined: hypersurface is singular")]
    SocleUndefined,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not a Y-fixing direction: {0}")]
    NotYFixing(String),

    #[error("work budget exceeded: {what} needs dimension {needed}, ceiling is {limit} (raise HODGEKIT_MAX_DIM to allow)")]
    BudgetExceeded { what: String, needed: usize, limit: usize },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
