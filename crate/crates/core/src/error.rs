use thiserror::Error;

use crate::euler::EulerTour;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("object count {count} exceeds the configured limit of {limit}")]
    LimitExceeded { count: u64, limit: u64 },

    /// The exact count does not fit in 64 bits; `expr` is the symbolic count.
    #[error("object count {expr} overflows 64-bit arithmetic")]
    CountOverflow { expr: String },

    #[error("{0} is not a vertex of this instance")]
    InvalidVertex(String),

    #[error("{0} is not an object of this instance")]
    InvalidWord(String),

    #[error("rank {rank} out of range (vertex count {count})")]
    RankOutOfRange { rank: u64, count: u64 },

    #[error("cycle length {len} is not a multiple of the stride {stride}")]
    Stride { len: usize, stride: usize },

    /// Hierholzer ran out of edges before covering the instance.
    #[error("tour used {used} of {total} edges; the transition graph is not connected")]
    TourIncomplete {
        used: u64,
        total: u64,
        partial: Box<EulerTour>,
    },

    #[error("malformed input: {0}")]
    Format(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("walker exceeded its step cap of {cap}")]
    StepCap { cap: usize },

    #[error("hamilton oracle is limited to {cap} objects, instance has {count}")]
    OracleCap { count: u64, cap: u64 },
}
