use sepcrit_core::CoreError;
use sepcrit_quantum::QuantumError;
use thiserror::Error;

/// Errors from criterion evaluation and search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriteriaError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error(transparent)]
    Quantum(#[from] QuantumError),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CriteriaError {
    /// True when the error reflects a numerical breakdown rather than
    /// bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            CriteriaError::Quantum(e) => e.is_numerical(),
            CriteriaError::Core(e) => e.is_numerical(),
            _ => false,
        }
    }
}
