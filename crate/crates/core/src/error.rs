use thiserror::Error;

/// Errors produced by encoding, graph construction, decoding and simulation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid pair ({i}, {j}) for N = {n}: need 1 <= i < j <= N")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("pair index {index} out of range for N = {n} ({pairs} pairs)")]
    InvalidPairIndex { index: usize, n: usize, pairs: usize },

    #[error("invalid size N = {n}: {reason}")]
    InvalidSize { n: usize, reason: &'static str },

    #[error("a {what} needs at least {min} logical bits, got N = {n}")]
    DegenerateSize {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("invalid bit value {0}: bits must be 0 or 1")]
    InvalidBit(u8),

    #[error("invalid bit string {0:?}")]
    InvalidBitString(String),

    #[error("check {check} references variable {var}, out of range or repeated ({n_vars} variables)")]
    InvalidCheck {
        check: usize,
        var: usize,
        n_vars: usize,
    },

    #[error("flip probability {0} outside [0, 1/2]")]
    InvalidEpsilon(f64),

    #[error("{what} exceeds capacity: {size} > {limit}")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("inconsistent evidence{}: all probability mass eliminated", var.map(|v| format!(" at variable {v}")).unwrap_or_default())]
    InconsistentEvidence { var: Option<usize> },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
