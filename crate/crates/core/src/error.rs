use thiserror::Error;

use crate::qpoly::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("invalid weight system: {0}")]
    InvalidWeights(String),

    #[error("{what} is the zero polynomial")]
    ZeroPolynomial { what: &'static str },

    #[error("{what} is not quasihomogeneous for the given weights")]
    NotQuasihomogeneous { what: &'static str },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: i64, right: i64 },

    #[error("graded slice of degree {degree} is empty")]
    EmptySlice { degree: i64 },

    #[error("substitution is not invertible (singular linear part)")]
    NotInvertible,

    #[error("substitution is not degree preserving")]
    NotDegreePreserving,

    #[error("substitution image {index} has a constant term")]
    ConstantTerm { index: usize },

    #[error("substitution does not preserve the hypersurface")]
    DoesNotPreserveV,

    #[error("contradictory options: {0}")]
    ContradictoryOptions(String),
}
