use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An oracle needed more working precision than the configured cap.
    #[error("precision infeasible: needed {needed} bits, cap is {cap} bits")]
    PrecisionInfeasible { needed: u64, cap: u64 },

    /// Caller supplied an argument outside an operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exact consistency gate failed. Never caused by valid input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
