//! Run configuration: error/exit-code mapping, flag resolution, and
//! the schema-validated config echoed into every JSON output.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sepcrit_core::CoreError;
use sepcrit_criteria::{Bipartition, CriteriaError, CriterionParams, DetectionMode, PivotChoice};
use sepcrit_quantum::{
    canonical_basis, gell_mann_basis, heisenberg_weyl_basis, pauli_basis, pauli_product_basis,
    weyl_basis, OperatorBasis, QuantumError, StateFamily,
};

pub const SCHEMA_VERSION: &str = "1";

/// CLI failure with its process exit code: 2 for configuration or
/// state problems, 3 for numerical failures.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<CriteriaError> for CliError {
    fn from(e: CriteriaError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<QuantumError> for CliError {
    fn from(e: QuantumError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Scan window settings echoed into scan outputs.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScanWindow {
    pub lo: f64,
    pub hi: f64,
    pub coarse: f64,
    pub tol: f64,
}

/// Default threshold-scan window: the full noise interval, coarse step
/// 1e-2, bisection bracket refined to 1e-6.
pub const DEFAULT_SCAN: ScanWindow = ScanWindow {
    lo: 0.0,
    hi: 1.0,
    coarse: 0.01,
    tol: 1e-6,
};

/// The fully resolved run configuration. Serialized into every JSON
/// output for reproducibility; deserialization rejects unknown fields.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub state_file: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub bases: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub criterion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub left: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params_source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pivots: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scan: Option<ScanWindow>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub format: Option<String>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            ..RunConfig::default()
        }
    }
}

/// Parses a family name plus its optional parameters. Parameters that
/// do not apply to the chosen family are rejected.
pub fn resolve_family(name: &str, a: Option<f64>, eps: Option<f64>) -> Result<StateFamily, CliError> {
    let family = match name {
        "bennett" => StateFamily::Bennett,
        "horodecki" => StateFamily::Horodecki { a: a.unwrap_or(0.9) },
        "werner332" => StateFamily::Werner332,
        "ghzpert" => StateFamily::GhzPerturbed {
            eps: eps.unwrap_or(0.1),
        },
        other => {
            return Err(CliError::config(format!(
                "unknown family '{other}' (expected bennett, horodecki, werner332, or ghzpert)"
            )))
        }
    };
    if a.is_some() && !matches!(family, StateFamily::Horodecki { .. }) {
        return Err(CliError::config("--a only applies to the horodecki family"));
    }
    if eps.is_some() && !matches!(family, StateFamily::GhzPerturbed { .. }) {
        return Err(CliError::config("--eps only applies to the ghzpert family"));
    }
    Ok(family)
}

/// Constructs one operator basis by name for a given dimension.
pub fn basis_for(name: &str, dim: usize) -> Result<OperatorBasis, CliError> {
    let basis = match name {
        "pauli" => {
            if dim == 2 {
                pauli_basis()
            } else if dim.is_power_of_two() {
                pauli_product_basis(dim.trailing_zeros() as usize)?
            } else {
                return Err(CliError::config(format!(
                    "pauli basis needs a power-of-two dimension, got {dim}"
                )));
            }
        }
        "pauli-product" => {
            if dim.is_power_of_two() && dim >= 2 {
                pauli_product_basis(dim.trailing_zeros() as usize)?
            } else {
                return Err(CliError::config(format!(
                    "pauli-product basis needs a power-of-two dimension, got {dim}"
                )));
            }
        }
        "gellmann" | "gell-mann" => gell_mann_basis(dim)?,
        "canonical" => canonical_basis(dim)?,
        "weyl" => weyl_basis(dim)?,
        "hw" | "heisenberg-weyl" => heisenberg_weyl_basis(dim)?,
        other => {
            return Err(CliError::config(format!(
                "unknown basis '{other}' (expected pauli, pauli-product, gellmann, canonical, weyl, or hw)"
            )))
        }
    };
    Ok(basis)
}

/// Resolves the `--basis` flag (one name, or a comma list matching the
/// subsystem count) into per-subsystem bases.
pub fn resolve_bases(flag: &str, dims: &[usize]) -> Result<Vec<OperatorBasis>, CliError> {
    let names: Vec<&str> = flag.split(',').map(str::trim).collect();
    let expanded: Vec<&str> = if names.len() == 1 {
        vec![names[0]; dims.len()]
    } else if names.len() == dims.len() {
        names
    } else {
        return Err(CliError::config(format!(
            "--basis lists {} names for {} subsystems",
            names.len(),
            dims.len()
        )));
    };
    expanded
        .iter()
        .zip(dims)
        .map(|(name, &d)| basis_for(name, d))
        .collect()
}

/// Default per-subsystem bases when none are requested: Gell-Mann,
/// which exists for every supported dimension.
pub fn default_bases(dims: &[usize]) -> Result<Vec<OperatorBasis>, CliError> {
    dims.iter().map(|&d| basis_for("gellmann", d)).collect()
}

/// Maps a criterion token to a detection mode.
///
/// `thm1` evaluates the bipartition `1|2` of a two-subsystem state,
/// `thm4` an arbitrary bipartition (`--left`), `thm5` the genuine
/// multipartite score, and `thm6` the full-separability check.
pub fn resolve_criterion(
    token: &str,
    left: Option<&[usize]>,
    order: usize,
) -> Result<DetectionMode, CliError> {
    match token {
        "thm1" => {
            if order != 2 {
                return Err(CliError::config(format!(
                    "criterion thm1 applies to two subsystems, state has {order}"
                )));
            }
            if left.is_some() {
                return Err(CliError::config("--left only applies to criterion thm4"));
            }
            Ok(DetectionMode::Partition(Bipartition::new(&[1], 2)?))
        }
        "thm4" => {
            let left = left.map(<[usize]>::to_vec).unwrap_or_else(|| vec![1]);
            Ok(DetectionMode::Partition(Bipartition::new(&left, order)?))
        }
        "thm5" => {
            if left.is_some() {
                return Err(CliError::config("--left only applies to criterion thm4"));
            }
            if order < 3 {
                return Err(CliError::config(format!(
                    "criterion thm5 needs at least three subsystems, state has {order}"
                )));
            }
            Ok(DetectionMode::Gme)
        }
        "thm6" => {
            if left.is_some() {
                return Err(CliError::config("--left only applies to criterion thm4"));
            }
            Ok(DetectionMode::FullSeparability)
        }
        other => Err(CliError::config(format!(
            "unknown criterion '{other}' (expected thm1, thm4, thm5, or thm6)"
        ))),
    }
}

/// The token a resolved mode is echoed back as.
pub fn criterion_token(mode: &DetectionMode) -> &'static str {
    match mode {
        DetectionMode::Partition(p) if p.order() == 2 && p.left() == [1usize].as_slice() => "thm1",
        DetectionMode::Partition(_) => "thm4",
        DetectionMode::Gme => "thm5",
        DetectionMode::FullSeparability => "thm6",
    }
}

/// Parses `--pivots`: `n,m` for a fixed pivot pair, `all` to maximize
/// over every pair.
pub fn resolve_pivots(flag: &str) -> Result<PivotChoice, CliError> {
    if flag == "all" {
        return Ok(PivotChoice::MaxOverAll);
    }
    let parts: Vec<&str> = flag.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::config(format!(
            "--pivots expects 'n,m' or 'all', got '{flag}'"
        )));
    }
    let n: usize = parts[0]
        .parse()
        .map_err(|_| CliError::config(format!("invalid pivot '{}'", parts[0])))?;
    let m: usize = parts[1]
        .parse()
        .map_err(|_| CliError::config(format!("invalid pivot '{}'", parts[1])))?;
    if n == 0 || m == 0 {
        return Err(CliError::config("pivots are 1-based and must be positive"));
    }
    Ok(PivotChoice::Fixed(n, m))
}

/// Parses `--left` as a comma list of 1-based subsystem labels.
pub fn resolve_left(flag: &str) -> Result<Vec<usize>, CliError> {
    flag.split(',')
        .map(str::trim)
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::config(format!("invalid subsystem label '{s}' in --left")))
        })
        .collect()
}

/// Loads and validates a criterion parameter file.
pub fn load_params(path: &Path) -> Result<CriterionParams, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let params: CriterionParams = serde_json::from_str(&text).map_err(|e| {
        CliError::config(format!("invalid params file {}: {e}", path.display()))
    })?;
    params.validate()?;
    Ok(params)
}

/// Applies `SEPCRIT_THREADS` to the global worker pool.
pub fn init_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("SEPCRIT_THREADS") {
        let n: usize = raw.parse().map_err(|_| {
            CliError::config(format!("SEPCRIT_THREADS must be a positive integer, got '{raw}'"))
        })?;
        if n == 0 {
            return Err(CliError::config("SEPCRIT_THREADS must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(format!("cannot configure worker pool: {e}")))?;
    }
    Ok(())
}
