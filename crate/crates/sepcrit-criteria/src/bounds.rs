//! Separability bounds matched to the extended correlation tensors.

use sepcrit_quantum::correlation_norm_bound;

use crate::bipartition::Bipartition;
use crate::error::CriteriaError;
use crate::params::CriterionParams;

fn dot(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum()
}

fn side(dims: &[usize], kappas: &[f64], subset: &[usize]) -> (Vec<usize>, Vec<f64>) {
    let d: Vec<usize> = subset.iter().map(|&s| dims[s - 1]).collect();
    let k: Vec<f64> = subset.iter().map(|&s| kappas[s - 1]).collect();
    (d, k)
}

/// Largest trace norm an extended correlation tensor can take on states
/// separable across the partition:
/// `sqrt(u.u + |alpha|^2 m_L) * sqrt(v.v + |beta|^2 m_R)`, with `m_X`
/// the squared-norm bound of side X.
pub fn partition_bound(
    dims: &[usize],
    kappas: &[f64],
    part: &Bipartition,
    params: &CriterionParams,
) -> Result<f64, CriteriaError> {
    params.validate()?;
    if part.order() != dims.len() {
        return Err(CriteriaError::InvalidPartition(format!(
            "partition covers {} subsystems but the state has {}",
            part.order(),
            dims.len()
        )));
    }
    let (dl, kl) = side(dims, kappas, part.left());
    let (dr, kr) = side(dims, kappas, part.right());
    let ml = correlation_norm_bound(&dl, &kl)?;
    let mr = correlation_norm_bound(&dr, &kr)?;
    let lhs = dot(&params.u) + dot(&params.alpha) * ml;
    let rhs = dot(&params.v) + dot(&params.beta) * mr;
    Ok(lhs.sqrt() * rhs.sqrt())
}

/// Largest tensor trace norm of the full correlation tensor over fully
/// separable states: `prod_i sqrt((d_i^2 - d_i)/kappa_i)`.
pub fn full_separability_bound(dims: &[usize], kappas: &[f64]) -> Result<f64, CriteriaError> {
    if dims.len() != kappas.len() || dims.is_empty() {
        return Err(CriteriaError::InvalidParams(format!(
            "{} dimensions with {} scales",
            dims.len(),
            kappas.len()
        )));
    }
    let mut acc = 1.0;
    for (&d, &k) in dims.iter().zip(kappas) {
        acc *= correlation_norm_bound(&[d], &[k])?.sqrt();
    }
    Ok(acc)
}
