use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<usize>, reason: String },

    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("{inner} is not contained in {outer}")]
    NotContained { outer: String, inner: String },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("{outer}/{inner} is not a rook strip")]
    NotRookStrip { outer: String, inner: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("field mismatch: characteristic {0} vs {1}")]
    FieldMismatch(u32, u32),

    #[error("not a submodule: {0}")]
    NotSubmodule(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("not exact: {0}")]
    NotExact(String),

    #[error("not a partial order: {0}")]
    NotPoset(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
