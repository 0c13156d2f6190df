use thiserror::Error;

use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IetError {
    #[error("permutation is not a bijection of 1..{n}: {images:?}")]
    NotBijective { n: usize, images: Vec<usize> },
    #[error("empty permutation")]
    Empty,
    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lengths sum to {0}, not 1")]
    LengthSum(Box<Scalar>),
    #[error("length {index} is negative: {value}")]
    NegativeLength { index: usize, value: Box<Scalar> },
    #[error("length {index} is zero")]
    ZeroLength { index: usize },
    #[error("permutation is partitioned at position {0}")]
    Partitioned(usize),
    #[error("point {0} is outside [0, 1)")]
    OutOfRange(Box<Scalar>),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
