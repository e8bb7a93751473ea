//! Quantum-state layer: operator bases, density matrices, correlation
//! tensors, product-state norm bounds, and reference state families.
//!
//! Conventions shared across the workspace:
//! - subsystems are 1-based and ordered, the first index digit is the
//!   slowest (row-major);
//! - every basis holds `d*d` elements with the identity at index 0 and
//!   a declared Hilbert-Schmidt scale `kappa` for the rest;
//! - correlation tensors are taken against the adjoint of the basis
//!   elements, so non-Hermitian bases round-trip exactly.

pub mod bases;
pub mod bloch;
pub mod bounds;
pub mod error;
pub mod states;

pub use bases::{
    canonical_basis, gell_mann_basis, heisenberg_weyl_basis, pauli_basis, pauli_product_basis,
    weyl_basis, BasisDiagnostics, OperatorBasis, MAX_DIM,
};
pub use bloch::{
    affine_mix, decompose, partial_trace, reconstruct, BlochDecomposition, DensityMatrix,
};
pub use bounds::{
    compare_bounds, correlation_norm_bound, gen_pauli_correlation_bound, weyl_correlation_bound,
    BoundComparison,
};
pub use error::QuantumError;
pub use states::{
    bennett_state, ghz_perturbed_state, horodecki_injection, horodecki_state,
    random_biseparable_state, random_density_matrix, random_pure_state, random_separable_state,
    state_332, StateFamily,
};
