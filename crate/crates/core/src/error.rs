use thiserror::Error;

/// Errors raised by the counting, reduction and geometry routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("no unique solution")]
    NoUniqueSolution,
    #[error("the zero polynomial has no leading part")]
    ZeroPolynomial,
    #[error("unknown candidate label {0:?}")]
    UnknownCandidate(String),
    #[error("invalid event: {0}")]
    InvalidEvent(String),
    #[error("grouping inconsistent with columns: {0}")]
    GroupingMismatch(String),
    #[error("period too small: period {period} fails validation at n = {n}")]
    PeriodTooSmall { period: u64, n: u64 },
    #[error("not enough sample points to fit residue class {residue} mod {period}")]
    NotEnoughSamples { period: u64, residue: u64 },
    #[error("probability undefined at n = {0} (empty denominator)")]
    Undefined(u64),
    #[error("empty polytope")]
    EmptyPolytope,
    #[error("degenerate polytope: affine dimension {dim} in a slice of dimension {expected}")]
    Degenerate { dim: usize, expected: usize },
    #[error("degenerate simplex")]
    DegenerateSimplex,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("event file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
