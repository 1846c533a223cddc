use thiserror::Error;

/// Errors raised by the algebra kernel and the admissibility checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("non-unit constant term")]
    NonUnitConstantTerm,
    #[error("cannot combine an ascending series with a descending series")]
    DirectionMismatch,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("q - q^-1 vanishes")]
    QMinusQInvVanishes,
    #[error("excluded configuration: {0}")]
    ExcludedConfiguration(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A computed quantity left the ring it is known to live in.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
