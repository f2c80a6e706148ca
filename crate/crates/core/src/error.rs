use thiserror::Error;

use crate::field::{FieldElem, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("projection onto the zero vector")]
    ZeroVector,
    #[error("members {i} and {j} are not orthogonal (inner product {value})")]
    NotOrthogonal { i: usize, j: usize, value: FieldElem },
    #[error("member {i} is not a unit vector (norm exponent {valuation})")]
    NotUnitNorm { i: usize, valuation: Valuation },
    #[error("member {i} has an isotropic or non-unit self pairing {value}")]
    DegenerateGram { i: usize, value: FieldElem },
    #[error("operators are defined over different orthonormal systems")]
    MismatchedSystem,
    #[error("expected {expected} eigenvalue entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operator has a nonzero identity part; only its compact part has a spectrum")]
    NotCompactPart,
    #[error("operator is not in the algebra generated by T (not constant on spectrum point {point})")]
    NotInAlgebra { point: String },
    #[error("{z} belongs to the spectrum")]
    SpectrumPoint { z: FieldElem },
    #[error("unknown spectrum point {0}")]
    UnknownPoint(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Variant name, stable across releases; used for error entries in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::Parse { .. } => "ParseError",
            Error::ZeroVector => "ZeroVector",
            Error::NotOrthogonal { .. } => "NotOrthogonal",
            Error::NotUnitNorm { .. } => "NotUnitNorm",
            Error::DegenerateGram { .. } => "DegenerateGram",
            Error::MismatchedSystem => "MismatchedSystem",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotCompactPart => "NotCompactPart",
            Error::NotInAlgebra { .. } => "NotInAlgebra",
            Error::SpectrumPoint { .. } => "SpectrumPoint",
            Error::UnknownPoint(_) => "UnknownPoint",
            Error::InvalidPartition(_) => "InvalidPartition",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
