use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be a positive odd integer, got {0}")]
    BadModulus(i64),
    #[error("expected a positive integer, got {0}")]
    NotPositive(i64),
    #[error("{0} does not satisfy the Gauss-sum hypotheses (need n \u{2261} 1 mod 4, or n \u{2261} 8 or 12 mod 16, with square-free odd part)")]
    GaussHypothesis(i64),
    #[error("series has zero constant term, reciprocal undefined")]
    ZeroConstantTerm,
    #[error("coefficient index {index} exceeds series order {order}")]
    OrderExceeded { index: usize, order: usize },
    #[error("base must be a square-free integer greater than 1, got {0}")]
    BadBase(u64),
    #[error("m must be a positive integer, got {0}")]
    BadM(u64),
    #[error("m = {0} exceeds the supported range")]
    TooLarge(u64),
    #[error("s must be at least {min}, got {got}")]
    BadS { min: u32, got: u32 },
    #[error("coefficient {index} for m = {m} is not a positive integer: {value}")]
    BadCoefficient { m: u64, index: usize, value: String },
    #[error("blocks must be at least 1")]
    NoBlocks,
    #[error("square-free m > 1 required, got {0}")]
    NotSquareFreeBase(u64),
    #[error("supported ranges are 1 <= r <= 4, 0 <= p <= r, 0 <= n <= 8; got r = {r}, p = {p}, n = {n}")]
    EnumerationCap { r: u32, p: u32, n: usize },
    #[error("need 0 <= p1 < p2 <= r, got p1 = {p1}, p2 = {p2}")]
    BadBand { p1: u32, p2: u32 },
    #[error("invalid augmented signed permutation: {0}")]
    BadPermutation(String),
}
