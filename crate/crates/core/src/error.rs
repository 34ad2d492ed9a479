use thiserror::Error;

use crate::format::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("matrix has a non-real entry")]
    NotReal,
    #[error("matrix is not a Hadamard matrix")]
    NotHadamard,
    #[error("matrices do not form an unbiased pair")]
    NotUnbiased,
    #[error("pair is not special with factor {0}")]
    NotSpecial(String),
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("order {0} is odd")]
    OddOrder(usize),
    #[error("order {0} is not supported by this operation")]
    UnsupportedOrder(usize),
    #[error("bases have mismatched dimensions {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} is not of the required form")]
    InvalidDimension(usize),
    #[error("basis contains a complex entry")]
    ComplexEntry,
    #[error("matrix must have positive order")]
    EmptyMatrix,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
