use thiserror::Error;

use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Cartan type: {0}")]
    UnsupportedType(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("weight ({0}) is not dominant")]
    NotDominant(Weight),

    #[error("weight ({weight}) has {got} coordinates, expected {expected}")]
    RankMismatch { weight: Weight, expected: usize, got: usize },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("({weight}) is not a weight of the module with highest weight ({highest})")]
    NotAWeight { weight: Weight, highest: Weight },

    #[error("({weight}) violates the level {level} condition")]
    LevelViolation { weight: Weight, level: u64 },

    #[error("level must be at least 1, got {0}")]
    InvalidLevel(u64),

    #[error("{what} {actual} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, actual: u64, cap: u64 },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
