use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("undefined input: {0}")]
    Undefined(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("not a unit modulo Phi_{n}: {detail}")]
    NonUnit { n: u64, detail: String },
    #[error("invalid parameters for {family}: {hypothesis}")]
    InvalidParams { family: String, hypothesis: String },
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("zero denominator factor: {0}")]
    ZeroDenominator(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inexact division in {0}")]
    InexactDivision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
