//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// Two matrices have incompatible shapes for the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix constructor received an entry list of the wrong length,
    /// or ragged row data.
    #[error("malformed matrix data: {0}")]
    MalformedMatrix(String),

    /// A layer of a Loewy signature was zero (all layers must be >= 1).
    #[error("signature layers must be positive, got {0:?}")]
    NonPositiveLayer(Vec<u64>),

    /// A signature was too short for the requested bound formula.
    #[error("signature must have at least 3 layers, got {0}")]
    SignatureTooShort(usize),

    /// The nilpotency degree is outside the supported range.
    #[error("nilpotency degree must satisfy {min} <= r <= {max}, got {got}")]
    DegreeOutOfRange { min: usize, max: usize, got: usize },

    /// No composition of `n` into `r` admissible layers exists.
    #[error("no admissible signature: need n >= r + 2, got n = {n}, r = {r}")]
    InfeasibleSignature { n: u64, r: usize },

    /// The first-exceptional search ran past its cap without success.
    #[error("search cap n <= {cap} exceeded for degree {r}")]
    SearchCapExceeded { r: usize, cap: u64 },

    /// The ambient size is below the minimum for the construction.
    #[error("ambient size must be at least {min}, got {got}")]
    AmbientTooSmall { min: u64, got: u64 },

    /// A spanning set is not multiplicatively closed; the indices identify
    /// the first offending product of basis elements.
    #[error("span is not closed: product of basis elements {i} and {j} is outside the span")]
    NotClosed { i: usize, j: usize },

    /// An operation required a local algebra.
    #[error("algebra is not local (dim A - dim rad(A) != 1)")]
    NotLocal,

    /// A trace-form kernel element failed the nilpotency check; the input
    /// was not a closed algebra (or not over a characteristic-zero field).
    #[error("radical candidate at index {0} is not nilpotent; input is not a closed algebra")]
    NonNilpotentRadical(usize),

    /// Two bricks cannot be stacked because their outer layers differ.
    #[error("outer layer mismatch: ({0}, {1}) vs ({2}, {3})")]
    OuterLayerMismatch(usize, usize, usize, usize),

    /// A brick's generator pair violates the commutation relations.
    #[error("brick generators {i} and {j} violate the commutation relation B_i A_j = B_j A_i")]
    BrickCommutation { i: usize, j: usize },

    /// A stack specification was empty.
    #[error("stack specification must contain at least one brick")]
    EmptyStack,

    /// Input text (JSON document or rational literal) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
