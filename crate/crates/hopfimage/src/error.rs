use thiserror::Error;

/// Errors surfaced by the engine. Scalar-level field mixups are programming
/// errors and panic instead; every user-reachable boundary returns one of
/// these.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a group table: {0}")]
    NotAGroup(String),

    #[error("{0} is not a primitive {1}-th root of unity in the given field")]
    NotPrimitiveRoot(String, usize),

    #[error("axiom violation: {axiom} fails at basis tuple {witness:?}")]
    AxiomViolation { axiom: String, witness: Vec<usize> },

    #[error("word letter index {index} out of range for a family of {family_size} maps")]
    UnknownIndex { index: usize, family_size: usize },

    #[error("input vectors are not linearly independent")]
    NotIndependent,

    #[error("morphism family must contain at least one map")]
    EmptyFamily,

    #[error("truncation overflow: result needs reduced-word length {needed}, bound is {bound}")]
    TruncationOverflow { needed: usize, bound: usize },

    #[error("resource cap exceeded: evaluation needs {needed} entries, cap is {cap}")]
    ResourceCap { needed: usize, cap: usize },

    #[error("no word found within length bound {bound}")]
    BoundExceeded { bound: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
