//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("algebra is not connected: beta_0 = {beta0}, expected 1")]
    NotConnected { beta0: usize },

    #[error("series has zero constant term, not invertible")]
    ZeroConstantTerm,

    #[error("degree {needed} exceeds cutoff {cutoff}")]
    CutoffExceeded { needed: usize, cutoff: usize },

    #[error("operands live over different generator sets or ambients")]
    AmbientMismatch,

    #[error("guardrail exceeded: {what} = {value}, limit {limit} (raise the limit to override)")]
    Guardrail { what: String, value: u64, limit: u64 },

    #[error("model is not free: {0}")]
    NonFree(String),

    #[error("differential is invalid: {0}")]
    InvalidDifferential(String),

    #[error("substitution cycle detected while eliminating contractible pairs")]
    SubstitutionCycle,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
