use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {0} outside the supported range 0..=16")]
    DimensionOutOfRange(usize),
    #[error("generator index {index} out of range for dimension {dim}")]
    GeneratorOutOfRange { index: usize, dim: usize },
    #[error("exponent must be a nilpotent element of even grade >= 2; found grade {0} part")]
    NotNilpotentEven(usize),
    #[error("singular metric: {0}")]
    SingularMetric(String),
    #[error("scalar {0} is not invertible in the exact ring")]
    NotInvertible(String),
    #[error("star product outside the supported function class: {0}")]
    UnsupportedClass(String),
    #[error("gaussian part does not decay: {0}")]
    NonDecaying(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("variable set mismatch: {0}")]
    VariableMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
