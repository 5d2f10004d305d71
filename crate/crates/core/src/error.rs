use thiserror::Error;

/// Errors raised by the series arithmetic and product builders.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation order must be non-negative, got {0}")]
    NegativeOrder(i64),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series with zero constant term has no reciprocal")]
    NotInvertible,
    #[error("index {index} out of range for order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("invalid product argument: {0}")]
    InvalidProduct(String),
}

pub type SeriesResult<T> = Result<T, SeriesError>;
