use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("every element of the field is excluded")]
    ExhaustedField,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dimension {0} is outside the supported range 1..=8")]
    DimensionOutOfRange(usize),
    #[error("the bracket fails the Leibniz identity at {0:?}")]
    NotLeibniz(Vec<usize>),
    #[error("the operator is not a Reynolds operator of the given weight")]
    NotReynolds,
    #[error("the coproduct fails the co-Leibniz identity at basis element {0}")]
    NotCoLeibniz(usize),
    #[error("the dual bracket of the coproduct is not a Leibniz bracket")]
    DualNotLeibniz,
    #[error("bilinear form is not skew-symmetric")]
    NotSkew,
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("cannot access {0}: {1}")]
    Io(String, String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
