use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("d∘d ≠ 0 from degree {degree}: basis vector {basis} maps to a nonzero vector")]
    NotAComplex { degree: usize, basis: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unknown operad `{0}`")]
    UnknownOperad(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
