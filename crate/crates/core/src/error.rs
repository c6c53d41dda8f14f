use thiserror::Error;

/// Errors produced by the exact and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange { index: usize, min: usize, max: usize },

    #[error("point sums to {found}, expected level {expected}")]
    LevelMismatch { expected: u64, found: u64 },

    #[error("degree {degree} exceeds level {level}")]
    DegreeExceedsLevel { degree: u32, level: u32 },

    /// A lower Pochhammer factor vanished before the series terminated.
    #[error("zero denominator at series term {term}")]
    ZeroDenominator { term: usize },

    #[error("series does not terminate: no upper parameter is a nonpositive integer")]
    NonTerminating,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
