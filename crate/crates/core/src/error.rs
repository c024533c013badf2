//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by validation, solvers, and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A goods instance contains a negative utility, or a chores instance a
    /// positive one.
    #[error("sign violation: agent {agent}, item {item} has utility {value} incompatible with a {kind} instance")]
    SignViolation {
        agent: usize,
        item: usize,
        value: String,
        kind: &'static str,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Zero denominator.
    #[error("non-finite value: zero denominator")]
    NonFiniteValue,

    #[error("cannot parse {text:?} as a rational")]
    InvalidRational { text: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// An allocation does not line up with the instance it is checked against.
    #[error("mismatched dimensions: {0}")]
    MismatchedDimensions(String),

    /// Bundles overlap or fail to cover every item.
    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("kind mismatch: expected a {expected} instance, got {actual}")]
    KindMismatch {
        expected: &'static str,
        actual: &'static str,
    },

    /// Exact search ran out of nodes; callers should fall back to an
    /// approximate mode.
    #[error("exact search exceeded the node budget of {budget}")]
    BudgetExceeded { budget: u64 },

    /// Exhaustive enumeration would visit more assignments than the cap.
    #[error("instance too large: {states} assignments exceeds the cap of {cap}")]
    TooLarge { states: u128, cap: u128 },

    #[error("invalid approximation configuration: {0}")]
    ConfigViolation(String),

    #[error("bad fixture parameters: {0}")]
    BadParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
