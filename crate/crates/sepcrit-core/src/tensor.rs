//! Dense complex tensors of arbitrary order.

use num_complex::Complex;

use crate::error::CoreError;
use crate::matrix::Mat;
use crate::scalar::Real;

/// Dense complex tensor.
///
/// Entries are stored row-major with the last mode fastest; the layout is
/// an implementation detail and all access goes through multi-indices.
/// Modes are numbered `1..=order` in the public API.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<T> {
    shape: Vec<usize>,
    data: Vec<Complex<T>>,
}

/// Visits every multi-index of `shape` in row-major order (last mode
/// fastest). The visit order matches the internal storage order, so the
/// k-th visited index corresponds to linear offset k.
pub fn for_each_index(shape: &[usize], mut f: impl FnMut(&[usize])) {
    let n = shape.len();
    if shape.iter().any(|&d| d == 0) {
        return;
    }
    let mut idx = vec![0usize; n];
    loop {
        f(&idx);
        // Row-major increment: bump the last digit, carrying leftward.
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < shape[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn validate_shape(shape: &[usize]) -> Result<(), CoreError> {
    if shape.is_empty() {
        return Err(CoreError::Shape("tensor order must be at least 1".into()));
    }
    if shape.iter().any(|&d| d == 0) {
        return Err(CoreError::Shape(format!(
            "all mode extents must be positive, got {shape:?}"
        )));
    }
    Ok(())
}

impl<T: Real> Tensor<T> {
    /// All-zero tensor of the given shape.
    pub fn zeros(shape: &[usize]) -> Result<Self, CoreError> {
        validate_shape(shape)?;
        let len = shape.iter().product();
        Ok(Tensor {
            shape: shape.to_vec(),
            data: vec![Complex::new(T::zero(), T::zero()); len],
        })
    }

    /// Builds a tensor from row-major data (last mode fastest).
    pub fn from_data(shape: &[usize], data: Vec<Complex<T>>) -> Result<Self, CoreError> {
        validate_shape(shape)?;
        let len: usize = shape.iter().product();
        if data.len() != len {
            return Err(CoreError::Shape(format!(
                "data length {} does not match shape {:?} (expected {})",
                data.len(),
                shape,
                len
            )));
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            data,
        })
    }

    /// Builds a tensor by evaluating `f` at every multi-index.
    pub fn from_fn(
        shape: &[usize],
        mut f: impl FnMut(&[usize]) -> Complex<T>,
    ) -> Result<Self, CoreError> {
        validate_shape(shape)?;
        let mut data = Vec::with_capacity(shape.iter().product());
        for_each_index(shape, |idx| data.push(f(idx)));
        Ok(Tensor {
            shape: shape.to_vec(),
            data,
        })
    }

    /// Mode extents.
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Number of modes.
    pub fn order(&self) -> usize {
        self.shape.len()
    }

    /// Total number of entries.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// True when the tensor has no entries (never for a validated shape).
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Extent of a 1-based mode.
    pub fn extent(&self, mode: usize) -> Result<usize, CoreError> {
        if mode == 0 || mode > self.order() {
            return Err(CoreError::ModeOutOfRange {
                mode,
                order: self.order(),
            });
        }
        Ok(self.shape[mode - 1])
    }

    /// Row-major entry slice (last mode fastest).
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Mutable row-major entry slice.
    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut off = 0usize;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.shape[k]);
            off = off * self.shape[k] + i;
        }
        off
    }

    /// Entry at a 0-based multi-index.
    pub fn at(&self, idx: &[usize]) -> Complex<T> {
        self.data[self.offset(idx)]
    }

    /// Overwrites the entry at a 0-based multi-index.
    pub fn set(&mut self, idx: &[usize], value: Complex<T>) {
        let off = self.offset(idx);
        self.data[off] = value;
    }

    /// Frobenius norm: square root of the summed squared entry magnitudes.
    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for z in &self.data {
            acc = acc + z.norm_sqr();
        }
        acc.sqrt()
    }

    /// Entrywise scaling by a complex factor.
    pub fn scale(&self, factor: Complex<T>) -> Self {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    /// Entrywise sum; shapes must match.
    pub fn add(&self, other: &Self) -> Result<Self, CoreError> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Entrywise difference; shapes must match.
    pub fn sub(&self, other: &Self) -> Result<Self, CoreError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
    ) -> Result<Self, CoreError> {
        if self.shape != other.shape {
            return Err(CoreError::Shape(format!(
                "shape mismatch: {:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Largest entrywise absolute difference between two tensors.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T, CoreError> {
        if self.shape != other.shape {
            return Err(CoreError::Shape(format!(
                "shape mismatch: {:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        let mut worst = T::zero();
        for (a, b) in self.data.iter().zip(&other.data) {
            let d = (*a - *b).norm();
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        let mut worst = T::zero();
        for z in &self.data {
            let d = z.norm();
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    /// Reinterprets an order-2 tensor as a matrix.
    pub fn to_matrix(&self) -> Result<Mat<T>, CoreError> {
        if self.order() != 2 {
            return Err(CoreError::Shape(format!(
                "expected order-2 tensor, got order {}",
                self.order()
            )));
        }
        Mat::from_data(self.shape[0], self.shape[1], self.data.clone())
    }

    /// Wraps a matrix as an order-2 tensor.
    pub fn from_matrix(m: &Mat<T>) -> Self {
        Tensor {
            shape: vec![m.rows(), m.cols()],
            data: m.data().to_vec(),
        }
    }
}

/// Entrywise product with paired leading indices.
///
/// The first `min(N, M)` modes of the operands are fused pairwise: output
/// mode `l` has extent `a_l * b_l` and entry index `i_l * b_l + j_l`.
/// Remaining modes of the longer operand are carried over unchanged. For
/// order-1 operands this is the Kronecker product of vectors; for equal
/// orders it generalizes the matrix Kronecker product mode by mode.
pub fn tensor_product<T: Real>(a: &Tensor<T>, b: &Tensor<T>) -> Result<Tensor<T>, CoreError> {
    let (na, nb) = (a.order(), b.order());
    let paired = na.min(nb);
    let mut shape = Vec::with_capacity(na.max(nb));
    for l in 0..paired {
        shape.push(a.shape[l] * b.shape[l]);
    }
    if na >= nb {
        shape.extend_from_slice(&a.shape[paired..]);
    } else {
        shape.extend_from_slice(&b.shape[paired..]);
    }

    let mut out = Tensor::zeros(&shape)?;
    let mut out_idx = vec![0usize; shape.len()];
    for_each_index(&a.shape, |ia| {
        let va = a.at(ia);
        for_each_index(&b.shape, |ib| {
            for l in 0..paired {
                out_idx[l] = ia[l] * b.shape[l] + ib[l];
            }
            if na >= nb {
                for l in paired..na {
                    out_idx[l] = ia[l];
                }
            } else {
                for l in paired..nb {
                    out_idx[l] = ib[l];
                }
            }
            let off = out.offset(&out_idx);
            out.data[off] = va * b.at(ib);
        });
    });
    Ok(out)
}

/// Outer product: output order is the sum of the operand orders and
/// `c[i, j] = a[i] * b[j]`.
pub fn outer_product<T: Real>(a: &Tensor<T>, b: &Tensor<T>) -> Result<Tensor<T>, CoreError> {
    let mut shape = a.shape.clone();
    shape.extend_from_slice(&b.shape);
    let mut data = Vec::with_capacity(a.len() * b.len());
    for &va in &a.data {
        for &vb in &b.data {
            data.push(va * vb);
        }
    }
    Tensor::from_data(&shape, data)
}

/// Contracts 1-based mode `k` with the columns of `u`:
/// `out[.., i, ..] = sum_j u[i, j] * a[.., j, ..]`.
///
/// Requires `u.cols() == extent(k)`; the output extent of mode `k` becomes
/// `u.rows()`.
pub fn k_mode_product<T: Real>(
    a: &Tensor<T>,
    u: &Mat<T>,
    k: usize,
) -> Result<Tensor<T>, CoreError> {
    let dk = a.extent(k)?;
    if u.cols() != dk {
        return Err(CoreError::Shape(format!(
            "mode-{k} product needs {dk} columns, matrix has {}",
            u.cols()
        )));
    }
    let mut shape = a.shape.clone();
    shape[k - 1] = u.rows();
    let mut out = Tensor::zeros(&shape)?;
    let mut in_idx = vec![0usize; a.order()];
    for_each_index(&shape, |idx| {
        in_idx.copy_from_slice(idx);
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..dk {
            in_idx[k - 1] = j;
            acc = acc + u.at(idx[k - 1], j) * a.at(&in_idx);
        }
        let off = out.offset(idx);
        out.data[off] = acc;
    });
    Ok(out)
}
