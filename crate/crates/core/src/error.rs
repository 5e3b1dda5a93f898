//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: {left:?} vs {right:?}")]
    AlphabetMismatch { left: String, right: String },

    #[error("empty pattern is not allowed in {operation}")]
    EmptyPattern { operation: &'static str },

    #[error("empty word is not allowed in {operation}")]
    EmptyWord { operation: &'static str },

    #[error("oracle limit exceeded: host length {len} > {max}")]
    OracleLimit { len: usize, max: usize },

    #[error("pattern `{word}` is not primitive")]
    NotPrimitive { word: String },

    #[error("sample too short for {context}: need at least {needed}, have {have}")]
    SampleTooShort {
        needed: usize,
        have: usize,
        context: &'static str,
    },

    #[error("`{word}` occurs {found} time(s) in the sample, need at least {needed}")]
    InsufficientOccurrences {
        word: String,
        found: usize,
        needed: usize,
    },

    #[error("factor `{factor}` of length {n} occurs only once in the sample")]
    InsufficientSample { factor: String, n: usize },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("substitution does not grow from its seed")]
    NoFixedPoint,

    #[error("unknown symbol {symbol:?} at offset {offset}")]
    UnknownSymbol { symbol: String, offset: usize },

    #[error("cylinder function has no entry for window `{window}`")]
    AbsentWindow { window: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
