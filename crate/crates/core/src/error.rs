use thiserror::Error;

/// Errors raised anywhere in the character-variety pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("bad reduction: leading coefficient vanishes modulo {0}")]
    BadReduction(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("polynomial is not squarefree; take its squarefree part first")]
    NotSquarefree,

    #[error("closed-manifold pipeline requires dim 0")]
    NotZeroDimensional,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("inconsistency: {0}")]
    Inconsistent(String),

    #[error("saturation failure: {0}")]
    SaturationFailure(String),

    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("ambiguous canonical component; candidates: {0:?}")]
    Ambiguous(Vec<usize>),

    #[error("mismatched generator sets")]
    GeneratorMismatch,

    #[error("computation cancelled")]
    Cancelled,
}

pub type Result<T> = std::result::Result<T, Error>;
