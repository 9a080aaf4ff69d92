use thiserror::Error;

pub type Result<T> = std::result::Result<T, QwalkError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QwalkError {
    #[error("a cycle needs at least 2 positions, got {0}")]
    TooFewPositions(usize),

    #[error("expected {expected} amplitudes, got {actual}")]
    AmplitudeCount { expected: usize, actual: usize },

    #[error("state is not normalized: norm² = {0}")]
    NotNormalized(f64),

    #[error("position {position} out of range for {n_positions} positions")]
    PositionOutOfRange { position: usize, n_positions: usize },

    #[error("dimension mismatch: {left} vs {right} positions")]
    DimensionMismatch { left: usize, right: usize },

    #[error("all position probabilities vanish; state is corrupted")]
    DegenerateState,

    #[error("coin index k = {k} outside 1..={d}")]
    CoinIndex { k: u64, d: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid secret key: {0}")]
    InvalidKey(String),

    #[error("message {m} out of range: must be below {limit}")]
    MessageOutOfRange { m: u64, limit: u64 },

    #[error("{what} too large for dense analysis: {size} positions (limit {limit})")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("Holevo ordering violated: S = {von_neumann} is not below H = {shannon}")]
    HolevoViolation { von_neumann: f64, shannon: f64 },

    #[error("eavesdropper enumeration is limited to tiny configs: {0}")]
    EnumerationTooLarge(String),

    #[error("QWS1 parse error at line {line}: {msg}")]
    Format { line: usize, msg: String },
}
