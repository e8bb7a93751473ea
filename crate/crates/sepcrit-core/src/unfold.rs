//! Matrix unfoldings of tensors.
//!
//! An unfolding splits the modes of an order-N tensor into a row group R
//! and a column group C and lays the entries out as a matrix. Within each
//! group the digit order is a rotation of the ascending mode list: pivot n
//! rotates R to `R[n..] ++ R[..n]`, and likewise m for C. The first mode
//! in the rotated list is the slowest-varying digit of the combined index.

use num_complex::Complex;

use crate::error::CoreError;
use crate::matrix::Mat;
use crate::scalar::Real;
use crate::tensor::{for_each_index, Tensor};

/// A row/column mode split with rotation pivots.
///
/// Modes are 1-based. `rows` and `cols` must each be nonempty, strictly
/// ascending, and disjoint; pivots satisfy `1 <= n <= rows.len()` and
/// `1 <= m <= cols.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfoldingSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
    row_pivot: usize,
    col_pivot: usize,
}

fn check_mode_list(label: &str, modes: &[usize]) -> Result<(), CoreError> {
    if modes.is_empty() {
        return Err(CoreError::InvalidUnfolding(format!(
            "{label} mode list is empty"
        )));
    }
    if modes[0] == 0 {
        return Err(CoreError::InvalidUnfolding(format!(
            "{label} modes are 1-based, got 0"
        )));
    }
    if modes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CoreError::InvalidUnfolding(format!(
            "{label} modes must be strictly ascending, got {modes:?}"
        )));
    }
    Ok(())
}

impl UnfoldingSpec {
    /// Builds and validates an unfolding spec.
    pub fn new(rows: &[usize], cols: &[usize], n: usize, m: usize) -> Result<Self, CoreError> {
        check_mode_list("row", rows)?;
        check_mode_list("column", cols)?;
        if rows.iter().any(|r| cols.contains(r)) {
            return Err(CoreError::InvalidUnfolding(format!(
                "row and column modes overlap: {rows:?} vs {cols:?}"
            )));
        }
        if n == 0 || n > rows.len() {
            return Err(CoreError::InvalidUnfolding(format!(
                "row pivot {n} out of range 1..={}",
                rows.len()
            )));
        }
        if m == 0 || m > cols.len() {
            return Err(CoreError::InvalidUnfolding(format!(
                "column pivot {m} out of range 1..={}",
                cols.len()
            )));
        }
        Ok(UnfoldingSpec {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            row_pivot: n,
            col_pivot: m,
        })
    }

    /// Row modes, ascending.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Column modes, ascending.
    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Row rotation pivot.
    pub fn row_pivot(&self) -> usize {
        self.row_pivot
    }

    /// Column rotation pivot.
    pub fn col_pivot(&self) -> usize {
        self.col_pivot
    }

    /// Checks that the spec covers exactly the modes of an order-N tensor.
    pub fn check_order(&self, order: usize) -> Result<(), CoreError> {
        let mut seen = vec![false; order + 1];
        for &mode in self.rows.iter().chain(&self.cols) {
            if mode > order {
                return Err(CoreError::ModeOutOfRange { mode, order });
            }
            seen[mode] = true;
        }
        if (1..=order).any(|k| !seen[k]) {
            return Err(CoreError::InvalidUnfolding(format!(
                "modes {:?} + {:?} do not cover 1..={}",
                self.rows, self.cols, order
            )));
        }
        Ok(())
    }

    /// Row digit order after rotation (first entry slowest).
    pub fn row_order(&self) -> Vec<usize> {
        rotate(&self.rows, self.row_pivot)
    }

    /// Column digit order after rotation (first entry slowest).
    pub fn col_order(&self) -> Vec<usize> {
        rotate(&self.cols, self.col_pivot)
    }

    /// Every unfolding of an order-N tensor: each nonempty proper subset
    /// of modes as the row group (its complement as the column group)
    /// combined with every pivot pair. The enumeration is deliberately
    /// exhaustive; specs that produce transposed or identical matrices
    /// are not deduplicated.
    pub fn all_for_order(order: usize) -> Vec<UnfoldingSpec> {
        let mut specs = Vec::new();
        if order < 2 {
            return specs;
        }
        for mask in 1u32..((1u32 << order) - 1) {
            let rows: Vec<usize> = (1..=order).filter(|k| mask & (1 << (k - 1)) != 0).collect();
            let cols: Vec<usize> = (1..=order).filter(|k| mask & (1 << (k - 1)) == 0).collect();
            for n in 1..=rows.len() {
                for m in 1..=cols.len() {
                    specs.push(UnfoldingSpec {
                        rows: rows.clone(),
                        cols: cols.clone(),
                        row_pivot: n,
                        col_pivot: m,
                    });
                }
            }
        }
        specs
    }
}

fn rotate(modes: &[usize], pivot: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(modes.len());
    out.extend_from_slice(&modes[pivot..]);
    out.extend_from_slice(&modes[..pivot]);
    out
}

/// Unfolds with explicit digit orders; `col_order` may be empty, giving a
/// single-column matrix.
fn unfold_by_orders<T: Real>(
    a: &Tensor<T>,
    row_order: &[usize],
    col_order: &[usize],
) -> Mat<T> {
    let shape = a.shape();
    let stride_of = |order: &[usize]| -> Vec<usize> {
        let mut strides = vec![0usize; order.len()];
        let mut acc = 1usize;
        for (slot, &mode) in order.iter().enumerate().rev() {
            strides[slot] = acc;
            acc *= shape[mode - 1];
        }
        strides
    };
    let row_strides = stride_of(row_order);
    let col_strides = stride_of(col_order);
    let nrows: usize = row_order.iter().map(|&mode| shape[mode - 1]).product();
    let ncols: usize = col_order.iter().map(|&mode| shape[mode - 1]).product();

    let mut out = Mat::zeros(nrows, ncols);
    let mut lin = 0usize;
    let data = a.data();
    for_each_index(shape, |idx| {
        let mut r = 0usize;
        for (slot, &mode) in row_order.iter().enumerate() {
            r += idx[mode - 1] * row_strides[slot];
        }
        let mut c = 0usize;
        for (slot, &mode) in col_order.iter().enumerate() {
            c += idx[mode - 1] * col_strides[slot];
        }
        out.set(r, c, data[lin]);
        lin += 1;
    });
    out
}

/// Unfolds a tensor according to a row/column mode split with pivots.
pub fn mixed_mode_unfold<T: Real>(
    a: &Tensor<T>,
    spec: &UnfoldingSpec,
) -> Result<Mat<T>, CoreError> {
    spec.check_order(a.order())?;
    Ok(unfold_by_orders(a, &spec.row_order(), &spec.col_order()))
}

/// Classical mode-k unfolding: mode `k` indexes rows; the remaining modes
/// index columns in the cyclic order `k+1, ..., N, 1, ..., k-1` with the
/// first listed mode slowest.
pub fn k_mode_unfold<T: Real>(a: &Tensor<T>, k: usize) -> Result<Mat<T>, CoreError> {
    let order = a.order();
    if k == 0 || k > order {
        return Err(CoreError::ModeOutOfRange { mode: k, order });
    }
    let col_order: Vec<usize> = ((k + 1)..=order).chain(1..k).collect();
    Ok(unfold_by_orders(a, &[k], &col_order))
}

/// Column-major vectorization of the mode-k unfolding. For an order-1
/// tensor this is the entry vector itself.
pub fn vec_k<T: Real>(a: &Tensor<T>, k: usize) -> Result<Vec<Complex<T>>, CoreError> {
    if a.order() == 1 {
        if k != 1 {
            return Err(CoreError::ModeOutOfRange { mode: k, order: 1 });
        }
        return Ok(a.data().to_vec());
    }
    let m = k_mode_unfold(a, k)?;
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            out.push(m.at(i, j));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn counting_tensor(shape: &[usize]) -> Tensor<f64> {
        let mut next = 0.0;
        Tensor::from_fn(shape, |_| {
            next += 1.0;
            r(next)
        })
        .unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(UnfoldingSpec::new(&[1], &[2], 1, 1).is_ok());
        assert!(UnfoldingSpec::new(&[], &[2], 1, 1).is_err());
        assert!(UnfoldingSpec::new(&[1, 2], &[2], 1, 1).is_err());
        assert!(UnfoldingSpec::new(&[2, 1], &[3], 1, 1).is_err());
        assert!(UnfoldingSpec::new(&[1], &[2], 2, 1).is_err());
        assert!(UnfoldingSpec::new(&[1], &[2], 0, 1).is_err());
        let spec = UnfoldingSpec::new(&[1], &[2], 1, 1).unwrap();
        assert!(spec.check_order(2).is_ok());
        assert!(spec.check_order(3).is_err());
    }

    #[test]
    fn order3_single_row_mode_example() {
        // 3x3x3 tensor, rows {1}, cols {2,3}, pivots 1: the (1,2,1) entry
        // (1-based) lands at row 1, column 2 (1-based).
        let a = counting_tensor(&[3, 3, 3]);
        let spec = UnfoldingSpec::new(&[1], &[2, 3], 1, 1).unwrap();
        let m = mixed_mode_unfold(&a, &spec).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 9);
        assert_eq!(m.at(0, 1), a.at(&[0, 1, 0]));
    }

    #[test]
    fn order6_rotated_pivots_example() {
        // 2^6 tensor, rows {1,2,3} pivot 1, cols {4,5,6} pivot 2: digit
        // orders become (2,3,1) and (6,4,5), so entry (1,1,1,1,2,1)
        // (1-based) lands at row 1, column 2 (1-based).
        let a = counting_tensor(&[2, 2, 2, 2, 2, 2]);
        let spec = UnfoldingSpec::new(&[1, 2, 3], &[4, 5, 6], 1, 2).unwrap();
        assert_eq!(spec.row_order(), vec![2, 3, 1]);
        assert_eq!(spec.col_order(), vec![6, 4, 5]);
        let m = mixed_mode_unfold(&a, &spec).unwrap();
        assert_eq!(m.rows(), 8);
        assert_eq!(m.cols(), 8);
        assert_eq!(m.at(0, 1), a.at(&[0, 0, 0, 0, 1, 0]));
    }

    #[test]
    fn single_row_mode_with_aligned_pivot_matches_k_unfold() {
        // rows {k} with the column pivot chosen so the column rotation
        // starts just past k reproduces the classical mode-k unfolding.
        let a = counting_tensor(&[2, 3, 4, 2]);
        for k in 1..=4usize {
            let cols: Vec<usize> = (1..=4).filter(|&x| x != k).collect();
            let m_pivot = cols.iter().filter(|&&c| c < k).count();
            let m_pivot = if m_pivot == 0 { cols.len() } else { m_pivot };
            let spec = UnfoldingSpec::new(&[k], &cols, 1, m_pivot).unwrap();
            let a_mixed = mixed_mode_unfold(&a, &spec).unwrap();
            let a_k = k_mode_unfold(&a, k).unwrap();
            assert_eq!(a_mixed, a_k, "mode {k}");
        }
    }

    #[test]
    fn vec_k_is_column_major_flatten() {
        let a = counting_tensor(&[2, 2]);
        // Entries: [[1,2],[3,4]]. Mode-1 unfolding is the matrix itself;
        // column-major flatten gives 1,3,2,4.
        let v1 = vec_k(&a, 1).unwrap();
        let v1: Vec<f64> = v1.iter().map(|z| z.re).collect();
        assert_eq!(v1, vec![1.0, 3.0, 2.0, 4.0]);
        // Mode-2 unfolding is the transpose; flatten gives 1,2,3,4.
        let v2 = vec_k(&a, 2).unwrap();
        let v2: Vec<f64> = v2.iter().map(|z| z.re).collect();
        assert_eq!(v2, vec![1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn vec_k_of_order1_is_identity() {
        let a = counting_tensor(&[4]);
        let v = vec_k(&a, 1).unwrap();
        assert_eq!(v, a.data().to_vec());
        assert!(vec_k(&a, 2).is_err());
    }

    #[test]
    fn unfolding_is_entry_bijective() {
        let a = counting_tensor(&[2, 3, 2]);
        for spec in UnfoldingSpec::all_for_order(3) {
            let m = mixed_mode_unfold(&a, &spec).unwrap();
            let mut seen: Vec<f64> = m.data().iter().map(|z| z.re).collect();
            seen.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let expect: Vec<f64> = (1..=12).map(|k| k as f64).collect();
            assert_eq!(seen, expect);
        }
    }

    #[test]
    fn all_for_order_counts() {
        // Order 2: R={1},C={2} and R={2},C={1}, one pivot pair each.
        assert_eq!(UnfoldingSpec::all_for_order(2).len(), 2);
        // Order 3: six singleton/pair splits with 1*2 or 2*1 pivots each.
        assert_eq!(UnfoldingSpec::all_for_order(3).len(), 12);
    }
}
