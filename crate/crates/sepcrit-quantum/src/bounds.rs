//! Sharp upper bounds on the Frobenius norm of the full correlation
//! tensor of a product state.
//!
//! For a single subsystem the squared norm is at most `(d^2 - d)/kappa`.
//! For N subsystems the bound depends only on the dimensions, the
//! declared scales, and which of three regimes the shape falls in
//! (pairs, "spread" shapes whose product is dominated by the largest
//! dimension squared, and everything else).

use crate::error::QuantumError;

fn check_dims(dims: &[usize]) -> Result<(), QuantumError> {
    if dims.is_empty() {
        return Err(QuantumError::InvalidState(
            "bound needs at least one subsystem".into(),
        ));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(QuantumError::InvalidState(format!(
            "subsystem dimensions must be at least 2, got {d}"
        )));
    }
    Ok(())
}

/// Squared-norm bound for the full correlation tensor of a product
/// state over the given dimensions and basis scales.
pub fn correlation_norm_bound(dims: &[usize], kappas: &[f64]) -> Result<f64, QuantumError> {
    check_dims(dims)?;
    if kappas.len() != dims.len() {
        return Err(QuantumError::InvalidState(format!(
            "{} dimensions but {} scales",
            dims.len(),
            kappas.len()
        )));
    }
    if let Some(&k) = kappas.iter().find(|&&k| !(k >= 1.0)) {
        return Err(QuantumError::InvalidState(format!(
            "basis scales must be at least 1, got {k}"
        )));
    }
    let n = dims.len();
    if n == 1 {
        let d = dims[0] as f64;
        return Ok((d * d - d) / kappas[0]);
    }
    let pd: f64 = dims.iter().map(|&d| d as f64).product();
    let pk: f64 = kappas.iter().product();
    let dhat = *dims.iter().max().unwrap() as f64;
    let s: f64 = dims.iter().map(|&d| 1.0 / (d as f64 * d as f64)).sum();
    let nf = n as f64;
    let value = if n == 2 || pd / (dhat * dhat) < 1.0 {
        (pd / pk) * (pd + 1.0 / (nf - 1.0) - pd / (nf - 1.0) * s)
    } else {
        (pd / pk) * (pd + 2.0 / (nf - 2.0) - pd / (nf - 2.0) * s)
    };
    Ok(value)
}

/// Squared-norm bound specialized to generalized Pauli bases
/// (scale 2 on every subsystem), in its sharper closed form.
pub fn gen_pauli_correlation_bound(dims: &[usize]) -> Result<f64, QuantumError> {
    check_dims(dims)?;
    let n = dims.len();
    if n == 1 {
        return Ok(dims[0] as f64 - 1.0);
    }
    let pd: f64 = dims.iter().map(|&d| d as f64).product();
    let s: f64 = dims.iter().map(|&d| 1.0 / (d as f64 * d as f64)).sum();
    let nf = n as f64;
    Ok((pd * (nf - 1.0 - s) + 1.0) / (nf - 1.0))
}

/// Squared-norm bound specialized to Weyl bases (scale d on each
/// subsystem). Returns `None` on the spread shapes (three or more
/// subsystems whose total dimension is below the square of the largest)
/// where this form is undefined.
pub fn weyl_correlation_bound(dims: &[usize]) -> Result<Option<f64>, QuantumError> {
    check_dims(dims)?;
    let n = dims.len();
    if n == 1 {
        return Ok(Some(dims[0] as f64 - 1.0));
    }
    let pd: f64 = dims.iter().map(|&d| d as f64).product();
    let dhat = *dims.iter().max().unwrap() as f64;
    let s: f64 = dims.iter().map(|&d| 1.0 / (d as f64 * d as f64)).sum();
    let nf = n as f64;
    if n == 2 {
        return Ok(Some(pd * (1.0 - 1.0 / (dhat * dhat))));
    }
    if pd / (dhat * dhat) < 1.0 {
        return Ok(None);
    }
    let value = pd - pd / (nf - 1.0) * s
        + 1.0 / (nf - 1.0)
        + (1.0 / (nf - 2.0)) * (nf / (nf - 1.0) - pd / (nf - 1.0) * s);
    Ok(Some(value))
}

/// Side-by-side values of the general bound (evaluated at scale
/// `kappa_i = d_i`) and the two specialized closed forms.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundComparison {
    pub dims: Vec<usize>,
    /// General bound at `kappa_i = d_i`.
    pub ours: f64,
    /// Generalized-Pauli closed form.
    pub gen_pauli: f64,
    /// Weyl closed form, where defined.
    pub weyl: Option<f64>,
}

/// Evaluates all three bound forms for one shape.
pub fn compare_bounds(dims: &[usize]) -> Result<BoundComparison, QuantumError> {
    let kappas: Vec<f64> = dims.iter().map(|&d| d as f64).collect();
    Ok(BoundComparison {
        dims: dims.to_vec(),
        ours: correlation_norm_bound(dims, &kappas)?,
        gen_pauli: gen_pauli_correlation_bound(dims)?,
        weyl: weyl_correlation_bound(dims)?,
    })
}
