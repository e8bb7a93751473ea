//! Density matrices and their correlation-tensor decompositions.
//!
//! A state on subsystems with dimensions (d_1, ..., d_N) decomposes as
//!
//! ```text
//! rho = (1/D) [ I + sum_S sum_idx T^(S)[idx] * (G_... or I per site) ]
//! ```
//!
//! with one correlation tensor `T^(S)` per nonempty subsystem subset S,
//! where `T^(S)[idx] = (prod_{s in S} d_s/kappa_s) Tr[(x)_s G_{idx_s+1}^dag rho_S]`
//! against the adjoint of the basis elements, so the round trip is exact
//! for non-Hermitian bases too.

use std::collections::BTreeMap;

use num_complex::Complex;
use sepcrit_core::{for_each_index, C64, Mat64, Tensor64};

use crate::bases::OperatorBasis;
use crate::error::QuantumError;

const HERMITICITY_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const POSITIVITY_TOL: f64 = 1e-9;

/// A validated multipartite density matrix with its subsystem layout.
///
/// Subsystems are ordered; the first index digit is the slowest. All
/// subsystem labels used in this crate are 1-based.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: Mat64,
}

fn check_dims(dims: &[usize]) -> Result<usize, QuantumError> {
    if dims.is_empty() {
        return Err(QuantumError::InvalidState(
            "state needs at least one subsystem".into(),
        ));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(QuantumError::InvalidState(format!(
            "subsystem dimensions must be at least 2, got {d}"
        )));
    }
    Ok(dims.iter().product())
}

impl DensityMatrix {
    /// Wraps a matrix after checking shape, hermiticity, unit trace and
    /// positivity (up to small numerical tolerances).
    pub fn new(dims: Vec<usize>, mat: Mat64) -> Result<Self, QuantumError> {
        let total = check_dims(&dims)?;
        if mat.rows() != total || mat.cols() != total {
            return Err(QuantumError::InvalidState(format!(
                "matrix is {}x{} but the dimensions {:?} require {}x{}",
                mat.rows(),
                mat.cols(),
                dims,
                total,
                total
            )));
        }
        let herm = mat.hermitian_deviation()?;
        if herm > HERMITICITY_TOL {
            return Err(QuantumError::InvalidState(format!(
                "matrix deviates from hermiticity by {herm:.3e}"
            )));
        }
        let tr = mat.trace()?;
        if (tr - C64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(QuantumError::InvalidState(format!(
                "trace is {tr} instead of 1"
            )));
        }
        let min = sepcrit_core::min_eigenvalue(&mat)?;
        if min < -POSITIVITY_TOL {
            return Err(QuantumError::InvalidState(format!(
                "matrix has a negative eigenvalue {min:.3e}"
            )));
        }
        Ok(DensityMatrix { dims, mat })
    }

    /// Builds the projector onto a pure state, normalizing the
    /// amplitude vector first.
    pub fn from_pure(dims: Vec<usize>, amplitudes: &[C64]) -> Result<Self, QuantumError> {
        let total = check_dims(&dims)?;
        if amplitudes.len() != total {
            return Err(QuantumError::InvalidState(format!(
                "amplitude vector has length {} but the dimensions {:?} require {}",
                amplitudes.len(),
                dims,
                total
            )));
        }
        let norm2: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(QuantumError::InvalidState(
                "amplitude vector has zero norm".into(),
            ));
        }
        let mut mat = Mat64::zeros(total, total);
        for i in 0..total {
            for j in 0..total {
                mat.set(i, j, amplitudes[i] * amplitudes[j].conj() / norm2);
            }
        }
        Ok(DensityMatrix { dims, mat })
    }

    /// The maximally mixed state `I/D`.
    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self, QuantumError> {
        let total = check_dims(&dims)?;
        let mat = Mat64::identity(total).scale(C64::new(1.0 / total as f64, 0.0));
        Ok(DensityMatrix { dims, mat })
    }

    /// Convex combination `(1-w) a + w b`.
    pub fn mix(a: &Self, b: &Self, w: f64) -> Result<Self, QuantumError> {
        if a.dims != b.dims {
            return Err(QuantumError::InvalidState(format!(
                "cannot mix states with dimensions {:?} and {:?}",
                a.dims, b.dims
            )));
        }
        let mat = a
            .mat
            .scale(C64::new(1.0 - w, 0.0))
            .add(&b.mat.scale(C64::new(w, 0.0)))?;
        Self::new(a.dims.clone(), mat)
    }

    /// `p * self + (1-p) * I/D`: the white-noise interpolation used by
    /// the built-in state families.
    pub fn mix_white_noise(&self, p: f64) -> Result<Self, QuantumError> {
        let mixed = Self::maximally_mixed(self.dims.clone())?;
        Self::mix(&mixed, self, p)
    }

    /// Subsystem dimensions.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert space dimension `D = prod d_i`.
    pub fn total_dim(&self) -> usize {
        self.mat.rows()
    }

    /// Number of subsystems.
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &Mat64 {
        &self.mat
    }

    /// `Tr(rho^2)`; equals the squared Frobenius norm for a hermitian
    /// matrix.
    pub fn purity(&self) -> f64 {
        let f = self.mat.frobenius_norm();
        f * f
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, QuantumError> {
        Ok(sepcrit_core::hermitian_eigenvalues(&self.mat)?)
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

fn check_subset(subset: &[usize], order: usize) -> Result<(), QuantumError> {
    if subset.is_empty() {
        return Err(QuantumError::InvalidState(
            "subsystem subset must be nonempty".into(),
        ));
    }
    for w in subset.windows(2) {
        if w[0] >= w[1] {
            return Err(QuantumError::InvalidState(format!(
                "subsystem subset {subset:?} must be strictly ascending"
            )));
        }
    }
    if subset[0] < 1 || *subset.last().unwrap() > order {
        return Err(QuantumError::InvalidState(format!(
            "subsystem subset {subset:?} out of range for {order} subsystems"
        )));
    }
    Ok(())
}

/// Traces out every subsystem not listed in `keep` (1-based, strictly
/// ascending) and returns the reduced state on the kept subsystems.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix, QuantumError> {
    let n = rho.order();
    check_subset(keep, n)?;
    if keep.len() == n {
        return Ok(rho.clone());
    }
    let dims = rho.dims();
    let kept_dims: Vec<usize> = keep.iter().map(|&s| dims[s - 1]).collect();
    let traced: Vec<usize> = (1..=n).filter(|s| !keep.contains(s)).collect();
    let full_strides = strides(dims);
    let kept_strides = strides(&kept_dims);
    let out_dim: usize = kept_dims.iter().product();
    let mut out = Mat64::zeros(out_dim, out_dim);

    // Enumerate kept row/column digit tuples and sum the diagonal over
    // the traced digits.
    let mut row_tuples: Vec<Vec<usize>> = Vec::new();
    for_each_index(&kept_dims, |ri| row_tuples.push(ri.to_vec()));
    let traced_dims: Vec<usize> = traced.iter().map(|&s| dims[s - 1]).collect();
    for ri in &row_tuples {
        for ci in &row_tuples {
            let r_out: usize = ri.iter().zip(&kept_strides).map(|(&i, &s)| i * s).sum();
            let c_out: usize = ci.iter().zip(&kept_strides).map(|(&i, &s)| i * s).sum();
            let mut acc = C64::new(0.0, 0.0);
            for_each_index(&traced_dims, |ti| {
                let mut r_full = 0usize;
                let mut c_full = 0usize;
                for (pos, &s) in keep.iter().enumerate() {
                    r_full += ri[pos] * full_strides[s - 1];
                    c_full += ci[pos] * full_strides[s - 1];
                }
                for (pos, &s) in traced.iter().enumerate() {
                    r_full += ti[pos] * full_strides[s - 1];
                    c_full += ti[pos] * full_strides[s - 1];
                }
                acc += rho.mat.at(r_full, c_full);
            });
            out.set(r_out, c_out, acc);
        }
    }
    DensityMatrix::new(kept_dims, out)
}

/// The full family of correlation tensors of a state, one per nonempty
/// subsystem subset, together with the bases that produced them.
#[derive(Clone, Debug)]
pub struct BlochDecomposition {
    dims: Vec<usize>,
    kappas: Vec<f64>,
    bases: Vec<OperatorBasis>,
    tensors: BTreeMap<Vec<usize>, Tensor64>,
}

impl BlochDecomposition {
    /// Subsystem dimensions.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Declared normalization scale of each subsystem basis.
    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    /// The per-subsystem bases.
    pub fn bases(&self) -> &[OperatorBasis] {
        &self.bases
    }

    /// Number of subsystems.
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    /// Correlation tensor of a subsystem subset (1-based ascending).
    pub fn tensor(&self, subset: &[usize]) -> Option<&Tensor64> {
        self.tensors.get(subset)
    }

    /// All stored subsets in lexicographic order.
    pub fn subsets(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.tensors.keys()
    }

    /// Assembles a decomposition from explicitly given tensors,
    /// validating every subset key and tensor shape against the bases.
    pub fn from_parts(
        bases: Vec<OperatorBasis>,
        tensors: BTreeMap<Vec<usize>, Tensor64>,
    ) -> Result<Self, QuantumError> {
        if bases.is_empty() {
            return Err(QuantumError::InvalidBasis(
                "decomposition needs at least one subsystem basis".into(),
            ));
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.dim()).collect();
        let kappas: Vec<f64> = bases.iter().map(|b| b.kappa()).collect();
        for (subset, t) in &tensors {
            check_subset(subset, dims.len())
                .map_err(|_| QuantumError::InvalidState(format!("bad subset key {subset:?}")))?;
            let expect: Vec<usize> = subset.iter().map(|&s| dims[s - 1] * dims[s - 1] - 1).collect();
            if t.shape() != expect.as_slice() {
                return Err(QuantumError::InvalidState(format!(
                    "tensor for subset {subset:?} has shape {:?}, expected {:?}",
                    t.shape(),
                    expect
                )));
            }
        }
        Ok(BlochDecomposition {
            dims,
            kappas,
            bases,
            tensors,
        })
    }

    /// Scales every tensor by a real factor.
    pub fn scale(&self, w: f64) -> Self {
        let z = Complex::new(w, 0.0);
        let tensors = self
            .tensors
            .iter()
            .map(|(k, t)| (k.clone(), t.scale(z)))
            .collect();
        BlochDecomposition {
            dims: self.dims.clone(),
            kappas: self.kappas.clone(),
            bases: self.bases.clone(),
            tensors,
        }
    }

    /// `D * Tr(rho^2)` computed from the tensors alone:
    /// `1 + sum_S prod_{s in S}(kappa_s/d_s) ||T^(S)||_F^2`.
    pub fn purity_functional(&self) -> f64 {
        let mut acc = 1.0;
        for (subset, t) in &self.tensors {
            let w: f64 = subset
                .iter()
                .map(|&s| self.kappas[s - 1] / self.dims[s - 1] as f64)
                .product();
            let f = t.frobenius_norm();
            acc += w * f * f;
        }
        acc
    }
}

/// Entrywise affine combination `(1-p) a + p b` of two decompositions
/// over the same bases and subsets.
pub fn affine_mix(
    a: &BlochDecomposition,
    b: &BlochDecomposition,
    p: f64,
) -> Result<BlochDecomposition, QuantumError> {
    if a.dims != b.dims {
        return Err(QuantumError::InvalidState(format!(
            "cannot mix decompositions over dimensions {:?} and {:?}",
            a.dims, b.dims
        )));
    }
    let mut tensors = BTreeMap::new();
    for (subset, ta) in &a.tensors {
        let tb = b.tensors.get(subset).ok_or_else(|| {
            QuantumError::InvalidState(format!("subset {subset:?} missing from second operand"))
        })?;
        let mixed = ta
            .scale(Complex::new(1.0 - p, 0.0))
            .add(&tb.scale(Complex::new(p, 0.0)))
            .map_err(QuantumError::Core)?;
        tensors.insert(subset.clone(), mixed);
    }
    Ok(BlochDecomposition {
        dims: a.dims.clone(),
        kappas: a.kappas.clone(),
        bases: a.bases.clone(),
        tensors,
    })
}

/// Computes every correlation tensor of `rho`. One basis per subsystem,
/// matching dimensions; all `2^N - 1` subset tensors are produced.
pub fn decompose(
    rho: &DensityMatrix,
    bases: &[OperatorBasis],
) -> Result<BlochDecomposition, QuantumError> {
    let n = rho.order();
    if bases.len() != n {
        return Err(QuantumError::InvalidBasis(format!(
            "state has {} subsystems but {} bases were given",
            n,
            bases.len()
        )));
    }
    for (i, b) in bases.iter().enumerate() {
        if b.dim() != rho.dims()[i] {
            return Err(QuantumError::InvalidBasis(format!(
                "basis {} has dimension {} but subsystem {} has dimension {}",
                i + 1,
                b.dim(),
                i + 1,
                rho.dims()[i]
            )));
        }
    }
    let dims = rho.dims().to_vec();
    let kappas: Vec<f64> = bases.iter().map(|b| b.kappa()).collect();
    let mut tensors = BTreeMap::new();
    for mask in 1usize..(1 << n) {
        let subset: Vec<usize> = (1..=n).filter(|s| mask & (1 << (s - 1)) != 0).collect();
        let marginal = partial_trace(rho, &subset)?;
        let factor: f64 = subset
            .iter()
            .map(|&s| dims[s - 1] as f64 / kappas[s - 1])
            .product();
        let shape: Vec<usize> = subset.iter().map(|&s| dims[s - 1] * dims[s - 1] - 1).collect();
        let mut tensor = Tensor64::zeros(&shape)?;
        let mut entries = Vec::with_capacity(tensor.len());
        for_each_index(&shape, |idx| {
            let mut op: Option<Mat64> = None;
            for (pos, &s) in subset.iter().enumerate() {
                let g = bases[s - 1].element(idx[pos] + 1);
                op = Some(match op {
                    None => g.clone(),
                    Some(m) => m.kron(g),
                });
            }
            let op = op.expect("subset nonempty");
            let val = op
                .hs_inner(marginal.matrix())
                .expect("kron dimension matches marginal");
            entries.push(val * C64::new(factor, 0.0));
        });
        tensor.data_mut().copy_from_slice(&entries);
        tensors.insert(subset, tensor);
    }
    Ok(BlochDecomposition {
        dims,
        kappas,
        bases: bases.to_vec(),
        tensors,
    })
}

/// Rebuilds the density matrix from its correlation tensors.
pub fn reconstruct(dec: &BlochDecomposition) -> Result<DensityMatrix, QuantumError> {
    let n = dec.order();
    let total: usize = dec.dims.iter().product();
    let mut acc = Mat64::identity(total);
    for (subset, tensor) in &dec.tensors {
        let shape: Vec<usize> = subset
            .iter()
            .map(|&s| dec.dims[s - 1] * dec.dims[s - 1] - 1)
            .collect();
        let mut k = 0usize;
        for_each_index(&shape, |idx| {
            let coeff = tensor.data()[k];
            k += 1;
            if coeff.norm() == 0.0 {
                return;
            }
            let mut op: Option<Mat64> = None;
            for s in 1..=n {
                let g = match subset.iter().position(|&x| x == s) {
                    Some(pos) => dec.bases[s - 1].element(idx[pos] + 1).clone(),
                    None => Mat64::identity(dec.dims[s - 1]),
                };
                op = Some(match op {
                    None => g,
                    Some(m) => m.kron(&g),
                });
            }
            let term = op.expect("at least one subsystem").scale(coeff);
            acc = acc.add(&term).expect("uniform total dimension");
        });
    }
    let mat = acc.scale(C64::new(1.0 / total as f64, 0.0));
    DensityMatrix::new(dec.dims.clone(), mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{gell_mann_basis, pauli_basis, weyl_basis};

    fn bell_state() -> DensityMatrix {
        let s = 1.0 / 2.0f64.sqrt();
        let amps = vec![
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(s, 0.0),
        ];
        DensityMatrix::from_pure(vec![2, 2], &amps).unwrap()
    }

    #[test]
    fn constructors_validate() {
        assert!(DensityMatrix::maximally_mixed(vec![2, 3]).is_ok());
        let bad = Mat64::identity(4);
        assert!(DensityMatrix::new(vec![2, 2], bad).is_err());
        let mut nonpos = Mat64::zeros(2, 2);
        nonpos.set(0, 0, C64::new(1.5, 0.0));
        nonpos.set(1, 1, C64::new(-0.5, 0.0));
        assert!(DensityMatrix::new(vec![2], nonpos).is_err());
    }

    #[test]
    fn bell_marginals_are_maximally_mixed() {
        let rho = bell_state();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        for keep in [&[1usize][..], &[2usize][..]] {
            let m = partial_trace(&rho, keep).unwrap();
            let mm = DensityMatrix::maximally_mixed(vec![2]).unwrap();
            assert!(m.matrix().max_abs_diff(mm.matrix()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_product_state_factors() {
        let a = DensityMatrix::from_pure(vec![2], &[C64::new(0.6, 0.0), C64::new(0.0, 0.8)])
            .unwrap();
        let b = DensityMatrix::from_pure(
            vec![3],
            &[C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(1.0, 0.5)],
        )
        .unwrap();
        let joint = DensityMatrix::new(vec![2, 3], a.matrix().kron(b.matrix())).unwrap();
        let ra = partial_trace(&joint, &[1]).unwrap();
        let rb = partial_trace(&joint, &[2]).unwrap();
        assert!(ra.matrix().max_abs_diff(a.matrix()).unwrap() < 1e-12);
        assert!(rb.matrix().max_abs_diff(b.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn bell_decomposition_has_known_tensor() {
        let rho = bell_state();
        let bases = vec![pauli_basis(), pauli_basis()];
        let dec = decompose(&rho, &bases).unwrap();
        // Singles vanish, pair tensor is diag(1, -1, 1).
        let t1 = dec.tensor(&[1]).unwrap();
        assert!(t1.max_abs() < 1e-12);
        let t12 = dec.tensor(&[1, 2]).unwrap();
        assert!((t12.at(&[0, 0]).re - 1.0).abs() < 1e-12);
        assert!((t12.at(&[1, 1]).re + 1.0).abs() < 1e-12);
        assert!((t12.at(&[2, 2]).re - 1.0).abs() < 1e-12);
        assert!((t12.frobenius_norm() - 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn round_trip_identity_hermitian_bases() {
        let rho = bell_state().mix_white_noise(0.7).unwrap();
        let bases = vec![pauli_basis(), pauli_basis()];
        let dec = decompose(&rho, &bases).unwrap();
        let back = reconstruct(&dec).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-12);
    }

    #[test]
    fn round_trip_identity_weyl_basis() {
        let amps: Vec<C64> = (0..9)
            .map(|k| C64::new(1.0 + 0.1 * k as f64, 0.05 * k as f64))
            .collect();
        let rho = DensityMatrix::from_pure(vec![3, 3], &amps)
            .unwrap()
            .mix_white_noise(0.6)
            .unwrap();
        let bases = vec![weyl_basis(3).unwrap(), weyl_basis(3).unwrap()];
        let dec = decompose(&rho, &bases).unwrap();
        let back = reconstruct(&dec).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-11);
    }

    #[test]
    fn purity_functional_matches_matrix_purity() {
        let amps: Vec<C64> = (0..6).map(|k| C64::new(0.3 + k as f64, 0.2)).collect();
        let rho = DensityMatrix::from_pure(vec![2, 3], &amps)
            .unwrap()
            .mix_white_noise(0.8)
            .unwrap();
        let bases = vec![pauli_basis(), gell_mann_basis(3).unwrap()];
        let dec = decompose(&rho, &bases).unwrap();
        let lhs = rho.total_dim() as f64 * rho.purity();
        assert!((lhs - dec.purity_functional()).abs() < 1e-9);
    }

    #[test]
    fn affine_mix_matches_state_mixing() {
        let rho1 = bell_state();
        let rho0 = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        let bases = vec![pauli_basis(), pauli_basis()];
        let d0 = decompose(&rho0, &bases).unwrap();
        let d1 = decompose(&rho1, &bases).unwrap();
        let p = 0.37;
        let mixed_dec = affine_mix(&d0, &d1, p).unwrap();
        let mixed_rho = rho1.mix_white_noise(p).unwrap();
        let direct = decompose(&mixed_rho, &bases).unwrap();
        for subset in direct.subsets() {
            let a = mixed_dec.tensor(subset).unwrap();
            let b = direct.tensor(subset).unwrap();
            assert!(a.max_abs_diff(b).unwrap() < 1e-12);
        }
    }

    #[test]
    fn subset_locality_tensor_depends_only_on_marginal() {
        // The pair tensor of subsystems (1,2) of a tripartite state must
        // equal the full tensor of the reduced two-party state.
        let amps: Vec<C64> = (0..12)
            .map(|k| C64::new((k % 5) as f64 + 0.3, 0.1 * (k % 3) as f64))
            .collect();
        let rho = DensityMatrix::from_pure(vec![2, 3, 2], &amps)
            .unwrap()
            .mix_white_noise(0.9)
            .unwrap();
        let bases = vec![pauli_basis(), gell_mann_basis(3).unwrap(), pauli_basis()];
        let dec = decompose(&rho, &bases).unwrap();
        let reduced = partial_trace(&rho, &[1, 2]).unwrap();
        let dec12 = decompose(&reduced, &bases[..2]).unwrap();
        let a = dec.tensor(&[1, 2]).unwrap();
        let b = dec12.tensor(&[1, 2]).unwrap();
        assert!(a.max_abs_diff(b).unwrap() < 1e-10);
    }
}
