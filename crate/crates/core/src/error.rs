use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count {0} is outside the supported range 1..=16")]
    InvalidVariableCount(usize),

    #[error("expected {expected} truth-table bits, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("function is not bent, its dual is undefined")]
    NotBent,

    #[error("objective is undefined for odd variable count {0}")]
    OddN(usize),

    #[error("operands have different variable counts ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("variable x{index} is not bound for {n} variables")]
    UnboundVariable { index: u8, n: usize },

    #[error("tree references seed f{0} which is absent from the seed set")]
    MissingSeed(u8),

    #[error("oracle refuses n = {n} (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid engine configuration: {0}")]
    ConfigInvalid(String),

    #[error("invalid seed set: {0}")]
    InvalidSeedSet(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
