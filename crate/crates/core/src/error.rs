use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("monomial order has a non-positive weight; local orders are not supported")]
    NonPositiveWeight,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("resource budget exceeded after {steps} reduction steps and {pairs} S-pairs")]
    Budget { steps: u64, pairs: u64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("quotient is not zero-dimensional")]
    PositiveDimensional,
    #[error("not found within bound {0}")]
    NotFound(u32),
    #[error("insufficient samples: need {needed}, have {have}")]
    InsufficientSamples { needed: usize, have: usize },
    #[error("symbolic power computation failed: {0}")]
    SymbolicPower(String),
    #[error("limit exceeded: {0}")]
    Limit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
