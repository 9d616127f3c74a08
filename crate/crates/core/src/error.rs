use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("germ coefficient {k} violates the advice bound {advice}")]
    InvalidGerm { k: u64, advice: u64 },
    #[error("advice 0 only admits the zero function")]
    ZeroAdvice,
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("oracle fuel exhausted after {0} steps")]
    FuelExhausted(u64),
    #[error("outside the problem's domain: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
