use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator rows do not span a full-rank lattice")]
    RankDeficient,
    #[error("basis matrix is singular")]
    SingularBasis,
    #[error("lattice does not contain {q}Z^n (q*e_{coord} is not a lattice vector)")]
    NotConstructionA { q: u8, coord: usize },
    #[error("coordinate index {index} out of range for length {len}")]
    BadIndex { index: usize, len: usize },
    #[error("bad dimension: {0}")]
    BadDimension(String),
    #[error("dimension {n} exceeds the limit {limit} for this search")]
    TooLarge { n: usize, limit: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported field order {0}; only 2 and 3 are supported")]
    UnsupportedFieldOrder(u64),
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
