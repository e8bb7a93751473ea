//! Dense complex matrices.

use num_complex::Complex;

use crate::error::CoreError;
use crate::scalar::Real;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Mat<T> {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex::new(T::one(), T::zero()));
        }
        m
    }

    /// Builds a matrix from row-major data.
    pub fn from_data(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self, CoreError> {
        if data.len() != rows * cols {
            return Err(CoreError::Shape(format!(
                "data length {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Builds a matrix from a list of equal-length rows.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self, CoreError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(CoreError::Shape("ragged row lengths".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix by evaluating `f` at every (row, col) pair.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True for square matrices.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Mutable row-major entry slice.
    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    /// Entry at (row, col), 0-based.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    /// Overwrites the entry at (row, col), 0-based.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex<T>) {
        self.data[i * self.cols + j] = value;
    }

    /// Borrow of a full row.
    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, CoreError> {
        if self.cols != other.rows {
            return Err(CoreError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>, CoreError> {
        if v.len() != self.cols {
            return Err(CoreError::Shape(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (j, &x) in v.iter().enumerate() {
                acc = acc + self.at(i, j) * x;
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Result<Complex<T>, CoreError> {
        if !self.is_square() {
            return Err(CoreError::Shape(format!(
                "trace of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..self.rows {
            acc = acc + self.at(i, i);
        }
        Ok(acc)
    }

    /// Hilbert-Schmidt inner product `Tr(self† other)`.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex<T>, CoreError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoreError::Shape("inner product shape mismatch".into()));
        }
        let mut acc = Complex::new(T::zero(), T::zero());
        for (a, b) in self.data.iter().zip(&other.data) {
            acc = acc + a.conj() * *b;
        }
        Ok(acc)
    }

    /// Entrywise scaling.
    pub fn scale(&self, factor: Complex<T>) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
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
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoreError::Shape(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> T {
        let mut acc = T::zero();
        for z in &self.data {
            acc = acc + z.norm_sqr();
        }
        acc.sqrt()
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

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T, CoreError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoreError::Shape("shape mismatch".into()));
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

    /// Largest deviation `|a_ij - conj(a_ji)|` from Hermitian symmetry.
    pub fn hermitian_deviation(&self) -> Result<T, CoreError> {
        if !self.is_square() {
            return Err(CoreError::Shape("hermiticity check on non-square matrix".into()));
        }
        let mut worst = T::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self.at(i, j) - self.at(j, i).conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        Ok(worst)
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.at(i1, j1);
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.set(
                            i1 * other.rows + i2,
                            j1 * other.cols + j2,
                            a * other.at(i2, j2),
                        );
                    }
                }
            }
        }
        out
    }

    /// Assembles a matrix from a grid of blocks. Each row of blocks must
    /// share a common height, each column of blocks a common width.
    pub fn from_blocks(blocks: &[Vec<&Mat<T>>]) -> Result<Self, CoreError> {
        if blocks.is_empty() || blocks[0].is_empty() {
            return Err(CoreError::Shape("empty block grid".into()));
        }
        let ncols_blocks = blocks[0].len();
        if blocks.iter().any(|row| row.len() != ncols_blocks) {
            return Err(CoreError::Shape("ragged block grid".into()));
        }
        let row_heights: Vec<usize> = blocks.iter().map(|row| row[0].rows()).collect();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols()).collect();
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, b) in row.iter().enumerate() {
                if b.rows() != row_heights[bi] || b.cols() != col_widths[bj] {
                    return Err(CoreError::Shape(format!(
                        "block ({bi},{bj}) is {}x{}, expected {}x{}",
                        b.rows(),
                        b.cols(),
                        row_heights[bi],
                        col_widths[bj]
                    )));
                }
            }
        }
        let total_rows: usize = row_heights.iter().sum();
        let total_cols: usize = col_widths.iter().sum();
        let mut out = Mat::zeros(total_rows, total_cols);
        let mut roff = 0usize;
        for (bi, row) in blocks.iter().enumerate() {
            let mut coff = 0usize;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        out.set(roff + i, coff + j, b.at(i, j));
                    }
                }
                coff += col_widths[bj];
            }
            roff += row_heights[bi];
        }
        Ok(out)
    }
}

/// Outer product of two complex vectors without conjugation:
/// `out[i, j] = u[i] * v[j]`.
pub fn outer_vec<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Mat<T> {
    let mut out = Mat::zeros(u.len(), v.len());
    for (i, &a) in u.iter().enumerate() {
        for (j, &b) in v.iter().enumerate() {
            out.set(i, j, a * b);
        }
    }
    out
}

/// Kronecker product of two complex vectors.
pub fn kron_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn product_and_trace() {
        let a = Mat::from_rows(vec![vec![r(1.0), r(2.0)], vec![r(3.0), r(4.0)]]).unwrap();
        let b = Mat::from_rows(vec![vec![r(0.0), r(1.0)], vec![r(1.0), r(0.0)]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.at(0, 0), r(2.0));
        assert_eq!(ab.at(1, 1), r(3.0));
        assert_eq!(a.trace().unwrap(), r(5.0));
    }

    #[test]
    fn dagger_conjugates_and_transposes() {
        let a = Mat::from_rows(vec![
            vec![C64::new(1.0, 2.0), C64::new(3.0, -1.0)],
            vec![C64::new(0.0, 1.0), C64::new(2.0, 0.0)],
        ])
        .unwrap();
        let d = a.dagger();
        assert_eq!(d.at(0, 1), C64::new(0.0, -1.0));
        assert_eq!(d.at(1, 0), C64::new(3.0, 1.0));
    }

    #[test]
    fn kron_matches_hand_computation() {
        let a = Mat::from_rows(vec![vec![r(1.0), r(2.0)], vec![r(3.0), r(4.0)]]).unwrap();
        let i2 = Mat::identity(2);
        let k = a.kron(&i2);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.at(0, 0), r(1.0));
        assert_eq!(k.at(1, 1), r(1.0));
        assert_eq!(k.at(0, 2), r(2.0));
        assert_eq!(k.at(3, 1), r(3.0));
    }

    #[test]
    fn block_assembly_places_blocks() {
        let a = Mat::from_rows(vec![vec![r(1.0)]]).unwrap();
        let b = Mat::from_rows(vec![vec![r(2.0), r(3.0)]]).unwrap();
        let c = Mat::from_rows(vec![vec![r(4.0)], vec![r(5.0)]]).unwrap();
        let d = Mat::from_rows(vec![vec![r(6.0), r(7.0)], vec![r(8.0), r(9.0)]]).unwrap();
        let m = Mat::from_blocks(&[vec![&a, &b], vec![&c, &d]]).unwrap();
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.at(0, 1), r(2.0));
        assert_eq!(m.at(2, 0), r(5.0));
        assert_eq!(m.at(1, 2), r(7.0));
    }

    #[test]
    fn block_assembly_rejects_mismatched_blocks() {
        let a = Mat::<f64>::identity(2);
        let b = Mat::<f64>::identity(3);
        assert!(Mat::from_blocks(&[vec![&a, &b]]).is_err());
    }

    #[test]
    fn outer_vec_has_no_conjugation() {
        let u = vec![C64::new(0.0, 1.0)];
        let v = vec![C64::new(0.0, 1.0)];
        let m = outer_vec(&u, &v);
        assert_eq!(m.at(0, 0), C64::new(-1.0, 0.0));
    }
}
