use thiserror::Error;

/// Errors raised by crystal construction and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Cartan type `{0}` (expected one of A1, A1xA1, A2, A3, B2, G2)")]
    UnsupportedType(String),

    #[error("color {color} is out of range for rank {rank}")]
    ColorOutOfRange { color: usize, rank: usize },

    #[error("weight has {got} coordinates but the rank is {rank}")]
    WeightRank { got: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
