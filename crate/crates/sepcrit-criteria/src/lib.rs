//! Entanglement detection criteria built on correlation-tensor
//! decompositions: extended tensors over bipartitions, separability
//! bounds, genuine-multipartite scoring, full-separability checks, and
//! the search utilities (scale maximization, threshold scans, a
//! restarted simplex optimizer) used to apply them along noisy state
//! families.

pub mod bipartition;
pub mod bounds;
pub mod detect;
pub mod ect;
pub mod error;
pub mod params;
pub mod presets;
pub mod reductions;
pub mod report;
pub mod search;

pub use bipartition::{canonical_bipartitions, Bipartition};
pub use bounds::{full_separability_bound, partition_bound};
pub use detect::{
    evaluate_bipartite, evaluate_partition, evaluate_state_bipartite, full_separability_check,
    gme_scores,
};
pub use ect::{ect_matrix, ect_trace_norm, PivotChoice};
pub use error::CriteriaError;
pub use params::{CriterionParams, ParamShape, ScaledParams};
pub use presets::{evaluate_mode, Detection, DetectionMode, ModeReport, Preset, PresetContext};
pub use reductions::{run_reduction_checks, ReductionCheck};
pub use report::{CriterionReport, GmeReport, PartitionScore, Verdict, MARGIN_TOL};
pub use search::{
    margin_surface, maximize_over_scale, optimize_params, scan_threshold, LogGrid,
    OptimizeOptions, OptimizeResult, ScaleMax, ScanResult, ScanStatus, SCALE_ITERS,
};
