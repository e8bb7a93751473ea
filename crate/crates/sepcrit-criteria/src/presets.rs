//! Built-in detection setups: a noise-parametrized state family, the
//! operator bases to expand it in, tuned criterion parameters, and the
//! detection mode to apply along the family.

use std::sync::Mutex;

use serde::Serialize;
use sepcrit_quantum::{
    affine_mix, decompose, heisenberg_weyl_basis, pauli_basis, pauli_product_basis,
    BlochDecomposition, OperatorBasis, StateFamily,
};

use crate::bipartition::Bipartition;
use crate::detect::{evaluate_partition, full_separability_check, gme_scores};
use crate::ect::PivotChoice;
use crate::error::CriteriaError;
use crate::params::{CriterionParams, ScaledParams};
use crate::report::{CriterionReport, GmeReport, Verdict};
use crate::search::{maximize_over_scale, scan_threshold, LogGrid, ScanResult, SCALE_ITERS};

/// Which detection question a setup answers.
#[derive(Clone, Debug, PartialEq)]
pub enum DetectionMode {
    /// Entanglement across one fixed bipartition.
    Partition(Bipartition),
    /// Genuine multipartite entanglement.
    Gme,
    /// Full separability via the full correlation tensor.
    FullSeparability,
}

/// A complete, reproducible detection setup.
#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub family: StateFamily,
    pub bases: Vec<OperatorBasis>,
    /// Tuned weight directions, scaled along a single parameter during
    /// detection. Absent when the mode ignores the weights.
    pub scaled: Option<ScaledParams>,
    pub mode: DetectionMode,
}

impl Preset {
    /// Two-qutrit bound-entangled family in the Heisenberg-Weyl basis.
    pub fn t1() -> Result<Self, CriteriaError> {
        let hw3 = heisenberg_weyl_basis(3)?;
        Ok(Preset {
            name: "t1",
            family: StateFamily::Bennett,
            bases: vec![hw3.clone(), hw3],
            scaled: Some(ScaledParams {
                u_len: 4,
                v_len: 4,
                alpha: vec![0.063782],
                beta: vec![0.0786454],
            }),
            mode: DetectionMode::Partition(Bipartition::new(&[1], 2)?),
        })
    }

    /// 2x4 bound-entangled family in Pauli and Pauli-product bases.
    pub fn t2() -> Result<Self, CriteriaError> {
        Self::t2_with(0.9)
    }

    /// Same setup with an explicit family parameter.
    pub fn t2_with(a: f64) -> Result<Self, CriteriaError> {
        Ok(Preset {
            name: "t2",
            family: StateFamily::Horodecki { a },
            bases: vec![pauli_basis(), pauli_product_basis(2)?],
            scaled: Some(ScaledParams {
                u_len: 2,
                v_len: 2,
                alpha: vec![-3.23405, 1.35293],
                beta: vec![-1.83346, -0.969888],
            }),
            mode: DetectionMode::Partition(Bipartition::new(&[1], 2)?),
        })
    }

    /// Tripartite 3x3x2 family, genuine multipartite detection.
    pub fn t3() -> Result<Self, CriteriaError> {
        let hw3 = heisenberg_weyl_basis(3)?;
        let hw2 = heisenberg_weyl_basis(2)?;
        Ok(Preset {
            name: "t3",
            family: StateFamily::Werner332,
            bases: vec![hw3.clone(), hw3, hw2],
            scaled: Some(ScaledParams {
                u_len: 2,
                v_len: 2,
                alpha: vec![-0.516382, -0.165015],
                beta: vec![-0.259148, 0.485242],
            }),
            mode: DetectionMode::Gme,
        })
    }

    /// Perturbed three-qubit GHZ family, full-separability check.
    pub fn t4(eps: f64) -> Result<Self, CriteriaError> {
        Ok(Preset {
            name: "t4",
            family: StateFamily::GhzPerturbed { eps },
            bases: vec![pauli_basis(), pauli_basis(), pauli_basis()],
            scaled: None,
            mode: DetectionMode::FullSeparability,
        })
    }

    /// The tuned setup matching a state family.
    pub fn for_family(family: &StateFamily) -> Result<Self, CriteriaError> {
        match family {
            StateFamily::Bennett => Self::t1(),
            StateFamily::Horodecki { a } => Self::t2_with(*a),
            StateFamily::Werner332 => Self::t3(),
            StateFamily::GhzPerturbed { eps } => Self::t4(*eps),
        }
    }
}

/// Mode-specific evaluation report.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModeReport {
    Bipartite(CriterionReport),
    Genuine(GmeReport),
    FullSeparability(CriterionReport),
}

/// Evaluates one detection mode on a decomposed state.
pub fn evaluate_mode(
    dec: &BlochDecomposition,
    mode: &DetectionMode,
    params: &CriterionParams,
    pivot: PivotChoice,
) -> Result<ModeReport, CriteriaError> {
    Ok(match mode {
        DetectionMode::Partition(part) => {
            ModeReport::Bipartite(evaluate_partition(dec, part, params, pivot)?)
        }
        DetectionMode::Gme => ModeReport::Genuine(gme_scores(dec, params, pivot)?),
        DetectionMode::FullSeparability => {
            ModeReport::FullSeparability(full_separability_check(dec)?)
        }
    })
}

impl ModeReport {
    pub fn verdict(&self) -> Verdict {
        match self {
            ModeReport::Bipartite(r) | ModeReport::FullSeparability(r) => r.verdict,
            ModeReport::Genuine(r) => r.verdict,
        }
    }

    pub fn margin(&self) -> f64 {
        match self {
            ModeReport::Bipartite(r) | ModeReport::FullSeparability(r) => r.margin,
            ModeReport::Genuine(r) => r.margin,
        }
    }
}

/// Full outcome of detection at one point of a family.
#[derive(Clone, Debug, Serialize)]
pub struct Detection {
    pub p: f64,
    /// The weight scale that maximized the margin, when one was searched.
    pub scale: Option<f64>,
    /// The parameters actually evaluated.
    pub params: CriterionParams,
    pub report: ModeReport,
}

/// A preset with both family endpoints decomposed once, ready for fast
/// evaluation anywhere along the noise parameter.
pub struct PresetContext {
    preset: Preset,
    dec0: BlochDecomposition,
    dec1: BlochDecomposition,
    pivot: PivotChoice,
}

impl PresetContext {
    pub fn new(preset: Preset) -> Result<Self, CriteriaError> {
        let (rho0, rho1) = preset.family.endpoints()?;
        let dec0 = decompose(&rho0, &preset.bases)?;
        let dec1 = decompose(&rho1, &preset.bases)?;
        Ok(PresetContext {
            preset,
            dec0,
            dec1,
            pivot: PivotChoice::default(),
        })
    }

    pub fn with_pivot(mut self, pivot: PivotChoice) -> Self {
        self.pivot = pivot;
        self
    }

    pub fn preset(&self) -> &Preset {
        &self.preset
    }

    /// Decomposition of the family member at noise parameter `p`,
    /// interpolated between the precomputed endpoints.
    pub fn decomposition_at(&self, p: f64) -> Result<BlochDecomposition, CriteriaError> {
        Ok(affine_mix(&self.dec0, &self.dec1, p)?)
    }

    fn report_for(
        &self,
        dec: &BlochDecomposition,
        params: &CriterionParams,
    ) -> Result<ModeReport, CriteriaError> {
        evaluate_mode(dec, &self.preset.mode, params, self.pivot)
    }

    /// Detection margin at `p` with fixed parameters.
    pub fn margin_fixed(&self, p: f64, params: &CriterionParams) -> Result<f64, CriteriaError> {
        let dec = self.decomposition_at(p)?;
        Ok(self.report_for(&dec, params)?.margin())
    }

    /// Detection margin at `p`, maximized over the weight scale when
    /// the preset carries scaled parameters.
    pub fn best_margin(&self, p: f64) -> Result<f64, CriteriaError> {
        match &self.preset.scaled {
            Some(scaled) => {
                let dec = self.decomposition_at(p)?;
                let slot: Mutex<Option<CriteriaError>> = Mutex::new(None);
                let m = maximize_over_scale(
                    |x| match self.report_for(&dec, &scaled.at(x)) {
                        Ok(r) => r.margin(),
                        Err(e) => {
                            let mut guard = slot.lock().unwrap();
                            guard.get_or_insert(e);
                            f64::NEG_INFINITY
                        }
                    },
                    &LogGrid::default(),
                    SCALE_ITERS,
                );
                if let Some(e) = slot.into_inner().unwrap() {
                    return Err(e);
                }
                Ok(m.value)
            }
            None => self.margin_fixed(p, &CriterionParams::correlation_only()),
        }
    }

    /// Full detection report at `p`: finds the best weight scale first,
    /// then evaluates once at it.
    pub fn detect_at(&self, p: f64) -> Result<Detection, CriteriaError> {
        let dec = self.decomposition_at(p)?;
        let (scale, params) = match &self.preset.scaled {
            Some(scaled) => {
                let slot: Mutex<Option<CriteriaError>> = Mutex::new(None);
                let m = maximize_over_scale(
                    |x| match self.report_for(&dec, &scaled.at(x)) {
                        Ok(r) => r.margin(),
                        Err(e) => {
                            let mut guard = slot.lock().unwrap();
                            guard.get_or_insert(e);
                            f64::NEG_INFINITY
                        }
                    },
                    &LogGrid::default(),
                    SCALE_ITERS,
                );
                if let Some(e) = slot.into_inner().unwrap() {
                    return Err(e);
                }
                (Some(m.x), scaled.at(m.x))
            }
            None => (None, CriterionParams::correlation_only()),
        };
        let report = self.report_for(&dec, &params)?;
        Ok(Detection {
            p,
            scale,
            params,
            report,
        })
    }

    /// Leftmost noise parameter where the scale-maximized margin turns
    /// positive.
    pub fn scan(
        &self,
        lo: f64,
        hi: f64,
        coarse: f64,
        tol: f64,
    ) -> Result<ScanResult, CriteriaError> {
        let slot: Mutex<Option<CriteriaError>> = Mutex::new(None);
        let result = scan_threshold(
            |p| match self.best_margin(p) {
                Ok(m) => m,
                Err(e) => {
                    let mut guard = slot.lock().unwrap();
                    guard.get_or_insert(e);
                    f64::NEG_INFINITY
                }
            },
            lo,
            hi,
            coarse,
            tol,
        );
        if let Some(e) = slot.into_inner().unwrap() {
            return Err(e);
        }
        Ok(result)
    }
}
