//! Dense complex tensors, mixed-mode matrix unfoldings, and trace-norm
//! machinery.
//!
//! Everything here is generic over the real component type through the
//! [`Real`] trait alias, so the same code drives `f32` and `f64` storage.
//! Downstream crates work almost exclusively through the `f64` aliases
//! exported at the root: [`C64`], [`Tensor64`], [`Mat64`].
//!
//! Conventions used throughout:
//!
//! * Tensor modes are numbered `1..=N` in the public API and stored
//!   row-major with the last mode fastest.
//! * Matrices are dense, row-major, with complex entries.
//! * Eigenvalues and singular values are reported in descending order.

pub mod eigen;
pub mod error;
pub mod matrix;
pub mod norms;
pub mod scalar;
pub mod tensor;
pub mod unfold;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, min_eigenvalue, Spectrum};
pub use error::CoreError;
pub use matrix::{kron_vec, outer_vec, Mat};
pub use norms::{singular_values, tensor_trace_norm, trace_norm_matrix};
pub use scalar::Real;
pub use tensor::{for_each_index, k_mode_product, outer_product, tensor_product, Tensor};
pub use unfold::{k_mode_unfold, mixed_mode_unfold, vec_k, UnfoldingSpec};

/// Complex scalar with `f64` components, the working precision of the
/// quantum and criteria layers.
pub type C64 = num_complex::Complex<f64>;

/// Dense complex tensor over `f64` components.
pub type Tensor64 = Tensor<f64>;

/// Dense complex matrix over `f64` components.
pub type Mat64 = Mat<f64>;
