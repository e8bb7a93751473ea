//! Error type for the quantum layer.

use sepcrit_core::CoreError;

/// Errors from state validation, basis construction, and decomposition.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuantumError {
    /// A density matrix failed validation.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A basis request or basis/dimension pairing is invalid.
    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    /// A requested construction is outside the supported domain.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Propagated tensor/numerics error.
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl QuantumError {
    /// True for runtime numerical failures (as opposed to invalid input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, QuantumError::Core(e) if e.is_numerical())
    }
}
