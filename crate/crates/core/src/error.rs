use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    /// A problem definition violates one of its invariants.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// Facility index outside `0..k`.
    #[error("facility index {index} out of range (k = {k})")]
    IndexOutOfRange { index: usize, k: usize },

    /// Rejection sampling exceeded the per-point retry cap; the mixture is
    /// concentrated outside the truncation rectangle.
    #[error("rejection sampling exceeded {cap} retries for point {point_index}")]
    RejectionCapExceeded { point_index: usize, cap: u64 },

    /// Some facility never appears in any choice set, so its marginal is
    /// unreachable by any tie-breaking rule.
    #[error("facility {facility} appears in no choice set; marginal p[{facility}] is unreachable")]
    UnreachableMarginal { facility: usize },

    /// Inputs assembled from different problem sizes.
    #[error("mismatched facility count: expected {expected}, got {got}")]
    MismatchedK { expected: usize, got: usize },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A condition the algorithm guarantees impossible was observed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
