use thiserror::Error;

use crate::f2linalg::F2Vector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid quadratic space: {0}")]
    InvalidSpace(String),

    #[error("not a plus-type space: {0}")]
    NotPlusType(String),

    #[error("subspace is not maximal totally singular: {0}")]
    NotMaximalTotallySingular(String),

    #[error("vector {0} is singular; a non-singular vector is required")]
    SingularVector(F2Vector),

    #[error("vector {0} must be a non-zero singular vector")]
    NotNonzeroSingular(F2Vector),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("matrix does not preserve the quadratic form: {0}")]
    NotIsometry(String),

    #[error("map Ψ→Φ fails the isometry condition at basis pair ({0}, {1})")]
    SymmetryViolation(usize, usize),

    #[error("Φ and Ψ intersect non-trivially (dim {0})")]
    NotComplementary(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("group closure exceeded cap {cap} (reached {reached} elements)")]
    ClosureCapExceeded { cap: usize, reached: usize },

    #[error("code invariant failed: {0}")]
    Code(String),

    #[error("lattice invariant failed: {0}")]
    Lattice(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
