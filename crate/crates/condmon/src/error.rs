use thiserror::Error;

/// Library-wide error type. Every fallible cap or precondition failure is a
/// distinct variant so callers (CLI exit codes, suites) can react precisely.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("insufficient rank: need {need} independent elements of order {order}, group supports {have}")]
    InsufficientRank {
        need: usize,
        order: u64,
        have: usize,
    },

    #[error("enumeration cap exceeded: {what} has {size} members, cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("not a member: {0}")]
    NotAMember(String),

    #[error("window too large: {0}")]
    WindowTooLarge(String),

    #[error("budget exceeded during {stage}: progress {progress}, cap {cap}")]
    BudgetExceeded {
        stage: &'static str,
        progress: u64,
        cap: u64,
    },

    #[error("atom enumeration bound attained: {0}")]
    BoundAttained(String),

    #[error("unknown prime: {0}")]
    UnknownPrime(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("group too small: {0}")]
    GroupTooSmall(String),

    #[error("arithmetic overflow in exponent arithmetic")]
    Overflow,

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
