//! Singular values, matrix trace norms, and the tensor trace norm.

use crate::eigen::hermitian_eigenvalues;
use crate::error::CoreError;
use crate::matrix::Mat;
use crate::scalar::{real, Real};
use crate::tensor::Tensor;
use crate::unfold::{mixed_mode_unfold, UnfoldingSpec};

/// Singular values in descending order.
///
/// Computed as square roots of the eigenvalues of the Gram matrix on the
/// smaller side (`A A†` or `A† A`, whichever is square of the smaller
/// dimension). This halves the accuracy available for tiny singular
/// values relative to a direct bidiagonalization, which is an accepted
/// trade-off here: the consumers compare norm sums against bounds at
/// tolerances far above the resulting error floor.
pub fn singular_values<T: Real>(a: &Mat<T>) -> Result<Vec<T>, CoreError> {
    let (r, c) = (a.rows(), a.cols());
    if r == 0 || c == 0 {
        return Ok(Vec::new());
    }
    let gram = if r <= c {
        a.mul(&a.dagger())?
    } else {
        a.dagger().mul(a)?
    };
    let eigs = hermitian_eigenvalues(&gram)?;
    // Gram eigenvalues are nonnegative analytically. Rounding in the Gram
    // product and the eigensolver perturbs exact zeros by O(eps * lmax),
    // and the square root amplifies that to O(sqrt(eps)) spurious mass in
    // singular-value sums. A relative cutoff well above the noise floor
    // and well below any spectral gap we care about removes it.
    let lmax = eigs.first().copied().unwrap_or(T::zero()).max(T::zero());
    let factor = real::<T>(1e-11).max(T::epsilon() * real::<T>(64.0));
    let cutoff = lmax * factor;
    Ok(eigs
        .into_iter()
        .map(|l| if l > cutoff { l.sqrt() } else { T::zero() })
        .collect())
}

/// Matrix trace norm (nuclear norm): the sum of singular values.
pub fn trace_norm_matrix<T: Real>(a: &Mat<T>) -> Result<T, CoreError> {
    let mut acc = T::zero();
    for s in singular_values(a)? {
        acc = acc + s;
    }
    Ok(acc)
}

/// Tensor trace norm: the maximum matrix trace norm over every unfolding
/// of the tensor (all row/column mode splits, all rotation pivots).
///
/// Requires order >= 2. For an order-2 tensor both unfoldings are the
/// matrix and its transpose, so this reduces to the ordinary trace norm.
/// The enumeration is naive by design; redundant specs cost extra SVDs
/// but keep the maximization transparently exhaustive.
pub fn tensor_trace_norm<T: Real>(a: &Tensor<T>) -> Result<T, CoreError> {
    let order = a.order();
    if order < 2 {
        return Err(CoreError::OrderTooSmall(order));
    }
    let mut best = T::zero();
    for spec in UnfoldingSpec::all_for_order(order) {
        let m = mixed_mode_unfold(a, &spec)?;
        let tn = trace_norm_matrix(&m)?;
        if tn > best {
            best = tn;
        }
    }
    Ok(best)
}
