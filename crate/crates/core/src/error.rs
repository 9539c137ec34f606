use thiserror::Error;

/// Errors produced by the permutation algebra and the protocols built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree: {0}")]
    InvalidDegree(usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid dimension {dim} (allowed 1..={max})")]
    InvalidDimension { dim: usize, max: usize },

    #[error("subgroup order {0} does not fit in 128 bits")]
    OrderTooLarge(String),

    #[error("rank {rank} out of range for degree {degree} (must be < {degree}!)")]
    RankOutOfRange { rank: String, degree: usize },

    #[error("message {message} too large for degree {degree} (must be < {degree}!)")]
    MessageTooLarge { message: String, degree: usize },

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("target is not in the cyclic subgroup: {0}")]
    NotInSubgroup(String),

    #[error("unsupported cycle structure: {0}")]
    UnsupportedStructure(String),

    #[error("moduli are not pairwise coprime: {0} and {1}")]
    NonCoprimeModuli(u128, u128),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
