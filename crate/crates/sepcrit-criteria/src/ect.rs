//! Extended correlation tensor assembly.
//!
//! For a bipartition (L|R) with pivot pair (n, m), weight vectors
//! u, v, alpha, beta, and subset tensors T^L, T^R, T^full, the extended
//! correlation tensor is the block matrix
//!
//! ```text
//! [ u v^T                u (beta (x) vec_m(T^R))^T      ]
//! [ (alpha (x) vec_n(T^L)) v^T   (alpha beta^T) (x) T^(L,n;R,m) ]
//! ```
//!
//! where `T^(L,n;R,m)` is the mixed-mode unfolding of the full tensor
//! and `(x)` the Kronecker product. No factor is conjugated.

use num_complex::Complex;
use sepcrit_core::{
    kron_vec, mixed_mode_unfold, outer_vec, trace_norm_matrix, vec_k, C64, Mat64, UnfoldingSpec,
};
use sepcrit_quantum::BlochDecomposition;

use crate::bipartition::Bipartition;
use crate::error::CriteriaError;
use crate::params::CriterionParams;

fn to_complex(xs: &[f64]) -> Vec<C64> {
    xs.iter().map(|&x| Complex::new(x, 0.0)).collect()
}

/// Pivot policy for the unfolding pair (n, m).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotChoice {
    /// Use this pivot pair, clamped into range for each side.
    Fixed(usize, usize),
    /// Evaluate every pivot pair and take the largest trace norm.
    /// The trace norm is pivot-invariant up to rounding, so this is a
    /// numerical cross-check rather than a different criterion.
    MaxOverAll,
}

impl Default for PivotChoice {
    fn default() -> Self {
        PivotChoice::Fixed(1, 1)
    }
}

impl PivotChoice {
    /// The concrete pivot pairs to evaluate for a partition with the
    /// given side sizes.
    pub fn pairs(&self, left_len: usize, right_len: usize) -> Vec<(usize, usize)> {
        match *self {
            PivotChoice::Fixed(n, m) => {
                vec![(n.clamp(1, left_len), m.clamp(1, right_len))]
            }
            PivotChoice::MaxOverAll => {
                let mut out = Vec::with_capacity(left_len * right_len);
                for n in 1..=left_len {
                    for m in 1..=right_len {
                        out.push((n, m));
                    }
                }
                out
            }
        }
    }
}

/// Builds the extended correlation tensor for one bipartition and one
/// pivot pair. `n` indexes into the left side, `m` into the right side
/// (both 1-based).
pub fn ect_matrix(
    dec: &BlochDecomposition,
    part: &Bipartition,
    params: &CriterionParams,
    n: usize,
    m: usize,
) -> Result<Mat64, CriteriaError> {
    params.validate()?;
    let order = dec.order();
    if part.order() != order {
        return Err(CriteriaError::InvalidPartition(format!(
            "partition covers {} subsystems but the state has {}",
            part.order(),
            order
        )));
    }
    if n == 0 || n > part.left().len() || m == 0 || m > part.right().len() {
        return Err(CriteriaError::InvalidPartition(format!(
            "pivot pair ({n}, {m}) out of range for partition {}",
            part.label()
        )));
    }
    let missing = |subset: &[usize]| {
        CriteriaError::InvalidPartition(format!("decomposition lacks the tensor for {subset:?}"))
    };
    let t_left = dec.tensor(part.left()).ok_or_else(|| missing(part.left()))?;
    let t_right = dec.tensor(part.right()).ok_or_else(|| missing(part.right()))?;
    let full: Vec<usize> = (1..=order).collect();
    let t_full = dec.tensor(&full).ok_or_else(|| missing(&full))?;

    let vl = vec_k(t_left, n)?;
    let vr = vec_k(t_right, m)?;
    let spec = UnfoldingSpec::new(part.left(), part.right(), n, m)?;
    let tu = mixed_mode_unfold(t_full, &spec)?;

    let u = to_complex(&params.u);
    let v = to_complex(&params.v);
    let alpha = to_complex(&params.alpha);
    let beta = to_complex(&params.beta);

    let top_left = outer_vec(&u, &v);
    let top_right = outer_vec(&u, &kron_vec(&beta, &vr));
    let bottom_left = outer_vec(&kron_vec(&alpha, &vl), &v);
    let bottom_right = outer_vec(&alpha, &beta).kron(&tu);

    Ok(Mat64::from_blocks(&[
        vec![&top_left, &top_right],
        vec![&bottom_left, &bottom_right],
    ])?)
}

/// Trace norm of the extended correlation tensor under a pivot policy.
pub fn ect_trace_norm(
    dec: &BlochDecomposition,
    part: &Bipartition,
    params: &CriterionParams,
    pivot: PivotChoice,
) -> Result<f64, CriteriaError> {
    let mut best = f64::NEG_INFINITY;
    for (n, m) in pivot.pairs(part.left().len(), part.right().len()) {
        let e = ect_matrix(dec, part, params, n, m)?;
        let t = trace_norm_matrix(&e)?;
        if t > best {
            best = t;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sepcrit_quantum::{decompose, gell_mann_basis, pauli_basis, random_density_matrix};

    fn sample_dec() -> BlochDecomposition {
        let rho = random_density_matrix(&[2, 3, 2], 31).unwrap();
        let bases = vec![
            pauli_basis(),
            gell_mann_basis(3).unwrap(),
            pauli_basis(),
        ];
        decompose(&rho, &bases).unwrap()
    }

    #[test]
    fn block_dimensions_are_consistent() {
        let dec = sample_dec();
        let part = Bipartition::new(&[1, 3], 3).unwrap();
        let params = CriterionParams {
            u: vec![1.0, 2.0],
            v: vec![0.5],
            alpha: vec![1.0, -1.0, 0.5],
            beta: vec![2.0, 1.0],
        };
        // Left tensors live on (2,2): 3*3 = 9 entries; right on (3): 8.
        let e = ect_matrix(&dec, &part, &params, 1, 1).unwrap();
        assert_eq!(e.rows(), 2 + 3 * 9);
        assert_eq!(e.cols(), 1 + 2 * 8);
    }

    #[test]
    fn zero_weights_leave_pure_outer_block() {
        // With alpha = beta = 0 the tensor blocks vanish and the trace
        // norm is exactly |u| |v|.
        let dec = sample_dec();
        let part = Bipartition::new(&[1], 3).unwrap();
        let params = CriterionParams {
            u: vec![3.0, 4.0],
            v: vec![1.0, 1.0],
            alpha: vec![0.0],
            beta: vec![0.0],
        };
        let t = ect_trace_norm(&dec, &part, &params, PivotChoice::default()).unwrap();
        assert!((t - 5.0 * 2.0f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn trace_norm_is_pivot_invariant() {
        let dec = sample_dec();
        let part = Bipartition::new(&[1, 2], 3).unwrap();
        let params = CriterionParams {
            u: vec![0.3, 0.7],
            v: vec![1.1],
            alpha: vec![0.9, -0.4],
            beta: vec![0.8],
        };
        let mut values = Vec::new();
        for (n, m) in PivotChoice::MaxOverAll.pairs(2, 1) {
            let e = ect_matrix(&dec, &part, &params, n, m).unwrap();
            values.push(trace_norm_matrix(&e).unwrap());
        }
        assert_eq!(values.len(), 2);
        for w in values.windows(2) {
            assert!((w[0] - w[1]).abs() < 1e-9, "{values:?}");
        }
    }

    #[test]
    fn invalid_pivots_and_partitions_are_rejected() {
        let dec = sample_dec();
        let part = Bipartition::new(&[1], 3).unwrap();
        let params = CriterionParams::correlation_only();
        assert!(ect_matrix(&dec, &part, &params, 2, 1).is_err());
        assert!(ect_matrix(&dec, &part, &params, 0, 1).is_err());
        let two_party = Bipartition::new(&[1], 2).unwrap();
        assert!(ect_matrix(&dec, &two_party, &params, 1, 1).is_err());
    }
}
