use thiserror::Error;

/// Everything that can go wrong while validating, building, coding or
/// (de)serializing an index.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must hold at least one symbol followed by the sentinel")]
    EmptyInput,

    #[error("sentinel byte {sentinel:#04x} must occur exactly once, at the end of the input (found at {position:?})")]
    SentinelMisplaced {
        sentinel: u8,
        /// First offending position, `None` when the sentinel is missing.
        position: Option<usize>,
    },

    #[error("cannot append sentinel {sentinel:#04x}: the input already contains it at position {position}")]
    SentinelCollision { sentinel: u8, position: usize },

    #[error(
        "sentinel {sentinel:#04x} is not smaller than byte {byte:#04x} at position {position}"
    )]
    SentinelNotMinimal {
        sentinel: u8,
        byte: u8,
        position: usize,
    },

    #[error("LCP storage has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("LCP word type cannot represent values up to {needed}")]
    WordTooNarrow { needed: usize },

    #[error("Elias codes are defined for positive integers only")]
    NonPositiveValue,

    #[error("bit stream ends in the middle of a code at bit {offset}")]
    TruncatedCode { offset: usize },

    #[error("no terminating 1-bit for the unary part starting at bit {offset}")]
    MalformedUnary { offset: usize },

    #[error("expected {expected} codes, decoded {got}")]
    CountMismatch { expected: usize, got: usize },

    #[error("compressed LCP stream needs {needed} bits, cap is {cap}")]
    CapacityExhausted { needed: usize, cap: usize },

    #[error("range ({i}, {j}] is not a valid rmq range for length {len}")]
    BadRange { i: usize, j: usize, len: usize },

    #[error("malformed BWT: {0}")]
    MalformedBwt(&'static str),

    #[error("malformed file: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
