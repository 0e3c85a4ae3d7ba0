use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("empty denominator")]
    EmptyDenominator,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0}")]
    InvalidInput(String),
    #[error("not a hyperplane fraction: {0}")]
    NotHp(String),
    #[error("function is not bounded above")]
    NotBoundedAbove,
    #[error("skeleton is unbounded in every coordinate; no cutoff exists")]
    UnboundedSkeleton,
    #[error("generators have no common zero")]
    EmptySkeleton,
    #[error("cell is incompatible with the function")]
    IncompatibleCell,
}

impl TropError {
    /// Parse-level failures (as opposed to semantic ones).
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            TropError::Syntax { .. } | TropError::UnknownVariable { .. } | TropError::EmptyDenominator
        )
    }
}

pub type Result<T> = std::result::Result<T, TropError>;
