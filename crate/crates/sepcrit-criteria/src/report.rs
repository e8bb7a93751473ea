//! Structured evaluation results.

use serde::Serialize;

use crate::bipartition::Bipartition;

/// Margins above this are treated as detections; anything within the
/// band is reported inconclusive rather than entangled.
pub const MARGIN_TOL: f64 = 1e-9;

/// Outcome of one criterion evaluation. These criteria are one-sided:
/// a positive margin certifies entanglement, a nonpositive one proves
/// nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "ENTANGLED")]
    Entangled,
    #[serde(rename = "GENUINE")]
    Genuine,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

/// Result of a single trace-norm-versus-bound comparison.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    /// Partition evaluated; absent for the full-separability check.
    pub partition: Option<Bipartition>,
    /// Trace norm of the extended correlation tensor (or tensor trace
    /// norm of the full tensor for the full-separability check).
    pub value: f64,
    /// Separable-state bound.
    pub bound: f64,
    /// `value - bound`.
    pub margin: f64,
    pub verdict: Verdict,
}

impl CriterionReport {
    pub fn from_value_bound(
        partition: Option<Bipartition>,
        value: f64,
        bound: f64,
    ) -> CriterionReport {
        let margin = value - bound;
        let verdict = if margin > MARGIN_TOL {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        };
        CriterionReport {
            partition,
            value,
            bound,
            margin,
            verdict,
        }
    }
}

/// Per-partition detail inside a genuine-entanglement evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionScore {
    pub partition: Bipartition,
    pub trace_norm: f64,
    pub bound: f64,
}

/// Result of the genuine multipartite entanglement score comparison.
#[derive(Clone, Debug, Serialize)]
pub struct GmeReport {
    /// Average extended-tensor trace norm over canonical bipartitions.
    pub score: f64,
    /// Biseparable-state bound on the score.
    pub bound: f64,
    /// `score - bound`.
    pub margin: f64,
    pub verdict: Verdict,
    pub per_partition: Vec<PartitionScore>,
}

impl GmeReport {
    pub fn from_scores(score: f64, bound: f64, per_partition: Vec<PartitionScore>) -> GmeReport {
        let margin = score - bound;
        let verdict = if margin > MARGIN_TOL {
            Verdict::Genuine
        } else {
            Verdict::Inconclusive
        };
        GmeReport {
            score,
            bound,
            margin,
            verdict,
            per_partition,
        }
    }
}
