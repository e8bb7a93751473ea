//! Weight-vector parameters of the extended correlation tensor.

use serde::{Deserialize, Serialize};

use crate::error::CriteriaError;

/// The four real weight vectors that shape an extended correlation
/// tensor: `u`, `v` border the top-left block, `alpha`, `beta` weight
/// the tensor blocks. All lengths are free.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionParams {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl CriterionParams {
    /// The parameter-free configuration `u = v = (0)`, `alpha = beta =
    /// (1)`: the detection value reduces to the trace norm of the
    /// unfolded correlation tensor alone.
    pub fn correlation_only() -> Self {
        CriterionParams {
            u: vec![0.0],
            v: vec![0.0],
            alpha: vec![1.0],
            beta: vec![1.0],
        }
    }

    /// Checks that every vector is nonempty and finite.
    pub fn validate(&self) -> Result<(), CriteriaError> {
        for (name, vec) in [
            ("u", &self.u),
            ("v", &self.v),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
        ] {
            if vec.is_empty() {
                return Err(CriteriaError::InvalidParams(format!(
                    "vector {name} must be nonempty"
                )));
            }
            if let Some(&x) = vec.iter().find(|x| !x.is_finite()) {
                return Err(CriteriaError::InvalidParams(format!(
                    "vector {name} contains non-finite entry {x}"
                )));
            }
        }
        Ok(())
    }

    /// The lengths of the four vectors.
    pub fn shape(&self) -> ParamShape {
        ParamShape {
            u_len: self.u.len(),
            v_len: self.v.len(),
            alpha_len: self.alpha.len(),
            beta_len: self.beta.len(),
        }
    }

    /// Concatenation `u ++ v ++ alpha ++ beta` for optimizers.
    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.shape().total());
        out.extend_from_slice(&self.u);
        out.extend_from_slice(&self.v);
        out.extend_from_slice(&self.alpha);
        out.extend_from_slice(&self.beta);
        out
    }
}

impl Default for CriterionParams {
    fn default() -> Self {
        CriterionParams::correlation_only()
    }
}

/// Vector lengths of a parameter set; the search space layout for the
/// derivative-free optimizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamShape {
    pub u_len: usize,
    pub v_len: usize,
    pub alpha_len: usize,
    pub beta_len: usize,
}

impl ParamShape {
    /// Total number of free coordinates.
    pub fn total(&self) -> usize {
        self.u_len + self.v_len + self.alpha_len + self.beta_len
    }

    pub fn validate(&self) -> Result<(), CriteriaError> {
        if self.u_len == 0 || self.v_len == 0 || self.alpha_len == 0 || self.beta_len == 0 {
            return Err(CriteriaError::InvalidParams(
                "every parameter vector must have at least one entry".into(),
            ));
        }
        Ok(())
    }

    /// Rebuilds a parameter set from a flat coordinate vector.
    pub fn params_from(&self, flat: &[f64]) -> Result<CriterionParams, CriteriaError> {
        if flat.len() != self.total() {
            return Err(CriteriaError::InvalidParams(format!(
                "flat vector has {} coordinates, shape needs {}",
                flat.len(),
                self.total()
            )));
        }
        let (u, rest) = flat.split_at(self.u_len);
        let (v, rest) = rest.split_at(self.v_len);
        let (alpha, beta) = rest.split_at(self.alpha_len);
        Ok(CriterionParams {
            u: u.to_vec(),
            v: v.to_vec(),
            alpha: alpha.to_vec(),
            beta: beta.to_vec(),
        })
    }
}

/// One-parameter family `u = (x, ..., x)`, `v = (sqrt(x), ..., sqrt(x))`
/// with fixed `alpha`, `beta`: the scaling used by the reference scans,
/// which maximize the margin over `x > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledParams {
    pub u_len: usize,
    pub v_len: usize,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl ScaledParams {
    /// The parameter set at scale `x`.
    pub fn at(&self, x: f64) -> CriterionParams {
        CriterionParams {
            u: vec![x; self.u_len],
            v: vec![x.sqrt(); self.v_len],
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
        }
    }
}
