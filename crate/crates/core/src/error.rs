use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("need at least {needed} terms, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("recurrence overflowed: non-finite term at index {index}")]
    Overflow { index: usize },

    #[error("unstable scheme: non-finite value at time index {time_index}")]
    Instability { time_index: usize },

    #[error("domain violation: {condition}")]
    Domain { condition: &'static str },

    #[error("degenerate data: design matrix has rank {rank}, need 3")]
    DegenerateData { rank: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}
