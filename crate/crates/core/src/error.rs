use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range (must be <= {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation word: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("dimension {requested} exceeds truncation at {max_dim}")]
    DimensionOverflow { requested: usize, max_dim: usize },

    #[error("simplicial identity violated: {0}")]
    IdentityViolation(String),

    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),

    #[error("maps do not share a target")]
    TargetMismatch,

    #[error("structure map leaves the constructed set: {0}")]
    NotClosed(String),

    #[error("arithmetic overflow during exact integer reduction")]
    Overflow,

    #[error("invalid decoration at dim {dim}, simplex {id}: {reason}")]
    InvalidDecoration { dim: usize, id: usize, reason: String },

    #[error("base has simplices in dimension {0}; at most 2 is supported")]
    BaseTooLarge(usize),

    #[error("max dimension {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
