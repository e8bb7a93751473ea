//! Error type shared by the tensor, unfolding, and numerics modules.

/// Errors produced by shape validation and the iterative eigensolver.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    /// A shape or dimension precondition was violated.
    #[error("shape error: {0}")]
    Shape(String),

    /// A 1-based mode index fell outside `1..=order`.
    #[error("mode {mode} out of range for order-{order} tensor")]
    ModeOutOfRange { mode: usize, order: usize },

    /// Row/column mode lists do not form a valid unfolding for the tensor.
    #[error("invalid unfolding: {0}")]
    InvalidUnfolding(String),

    /// Input to the Hermitian eigensolver deviates too far from `h == h†`.
    #[error("matrix is not Hermitian: max deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// The cyclic Jacobi sweep cap was reached before the off-diagonal
    /// mass dropped below threshold.
    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off:.3e})")]
    NoConvergence { sweeps: usize, off: f64 },

    /// Tensor trace norms are defined for order >= 2 only.
    #[error("tensor trace norm requires order >= 2, got order {0}")]
    OrderTooSmall(usize),
}

impl CoreError {
    /// True for errors that indicate a runtime numerical failure rather
    /// than invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, CoreError::NoConvergence { .. })
    }
}
