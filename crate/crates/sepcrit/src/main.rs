//! Command-line front end: evaluates the trace-norm criteria on
//! built-in state families or user state files, scans detection
//! thresholds, optimizes weight vectors, and emits the reference tables
//! and margin surfaces as CSV.

mod config;
mod stateio;
mod surfaces;
mod tables;

use std::cell::RefCell;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sepcrit_criteria::{
    evaluate_mode, optimize_params, scan_threshold, Bipartition, CriteriaError, CriterionParams,
    DetectionMode, ModeReport, OptimizeOptions, ParamShape, PivotChoice, Preset, PresetContext,
    ScanStatus, Verdict,
};
use sepcrit_quantum::{decompose, BlochDecomposition, StateFamily};

use config::{CliError, RunConfig, DEFAULT_SCAN, SCHEMA_VERSION};

#[derive(Parser)]
#[command(
    name = "sepcrit",
    version,
    about = "Entanglement detection via correlation-tensor trace norms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect an operator basis.
    Basis {
        #[command(subcommand)]
        action: BasisAction,
    },
    /// Export a built-in state or convert a state file.
    State {
        #[command(subcommand)]
        action: StateAction,
    },
    /// Evaluate one criterion on a state and report the verdict.
    Detect(DetectArgs),
    /// Find the smallest noise parameter where detection turns positive.
    Scan(ScanArgs),
    /// Optimize the criterion weight vectors for a state.
    Optimize(OptimizeArgs),
    /// Rebuild a reference threshold table as CSV.
    Reproduce(ReproduceArgs),
    /// Emit a margin-surface CSV grid for plotting.
    Figure(FigureArgs),
}

#[derive(Subcommand)]
enum BasisAction {
    /// Print the basis elements and consistency diagnostics as JSON.
    Dump(BasisDumpArgs),
}

#[derive(Args)]
struct BasisDumpArgs {
    /// Basis family: pauli, pauli-product, gellmann, canonical, weyl, or hw.
    #[arg(long)]
    basis: String,
    /// Subsystem dimension.
    #[arg(long)]
    dim: usize,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum StateAction {
    /// Write the density matrix in a documented on-disk format.
    Dump(StateDumpArgs),
}

#[derive(Args)]
struct StateDumpArgs {
    #[command(flatten)]
    source: StateSource,
    /// Output format: json, csv, or packed.
    #[arg(long, default_value = "json")]
    format: String,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StateSource {
    /// Built-in family: bennett, horodecki, werner332, or ghzpert.
    #[arg(long, conflicts_with = "state")]
    family: Option<String>,
    /// Family parameter for horodecki (default 0.9).
    #[arg(long, requires = "family")]
    a: Option<f64>,
    /// Perturbation for ghzpert (default 0.1).
    #[arg(long, requires = "family")]
    eps: Option<f64>,
    /// Noise parameter along the family (default 1).
    #[arg(long, requires = "family")]
    p: Option<f64>,
    /// Density-matrix file, JSON or packed.
    #[arg(long, value_name = "FILE")]
    state: Option<PathBuf>,
}

#[derive(Args)]
struct CriterionArgs {
    /// Operator bases: one family name, or one per subsystem comma-separated.
    #[arg(long)]
    basis: Option<String>,
    /// Criterion: thm1, thm4, thm5, or thm6.
    #[arg(long)]
    criterion: Option<String>,
    /// 1-based subsystems on the left of the thm4 bipartition, comma-separated.
    #[arg(long)]
    left: Option<String>,
    /// JSON file with fixed weight vectors u, v, alpha, beta.
    #[arg(long, value_name = "FILE")]
    params: Option<PathBuf>,
    /// Unfolding pivot pair "n,m", or "all" (default "1,1").
    #[arg(long)]
    pivots: Option<String>,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    source: StateSource,
    #[command(flatten)]
    crit: CriterionArgs,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    source: StateSource,
    #[command(flatten)]
    crit: CriterionArgs,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    source: StateSource,
    #[command(flatten)]
    crit: CriterionArgs,
    /// Vector lengths "u,v,alpha,beta" (default from --params, else 1,1,1,1).
    #[arg(long)]
    shape: Option<String>,
    /// Constrain u and v to constant vectors (one free scalar each).
    #[arg(long)]
    constant_uv: bool,
    /// Independent optimizer restarts.
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// Objective evaluations allowed per restart.
    #[arg(long, default_value_t = 2000)]
    evals: usize,
    /// Seed for the restart draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Table to rebuild: t1, t2, t3, or t4.
    table: String,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure to rebuild: 1, 2, 5, or 6.
    fig: String,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    config::init_threads()?;
    match cli.command {
        Command::Basis {
            action: BasisAction::Dump(args),
        } => cmd_basis_dump(args),
        Command::State {
            action: StateAction::Dump(args),
        } => cmd_state_dump(args),
        Command::Detect(args) => cmd_detect(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Figure(args) => cmd_figure(args),
    }
}

fn write_output(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))?,
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::config(format!("cannot write stdout: {e}")))?,
    }
    Ok(())
}

fn json_bytes(value: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("json serialization");
    bytes.push(b'\n');
    bytes
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Entangled => "ENTANGLED",
        Verdict::Genuine => "GENUINE",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

/// A run's resolved state source plus the evaluation ingredients shared
/// by detect, scan, and optimize.
struct Resolved {
    cfg: RunConfig,
    pivot: PivotChoice,
    /// Fixed weight vectors from `--params`; their presence disables
    /// the weight-scale search.
    fixed: Option<CriterionParams>,
    kind: SourceKind,
}

enum SourceKind {
    Family { ctx: PresetContext, p: f64 },
    File { dec: BlochDecomposition, mode: DetectionMode },
}

impl Resolved {
    fn mode(&self) -> &DetectionMode {
        match &self.kind {
            SourceKind::Family { ctx, .. } => &ctx.preset().mode,
            SourceKind::File { mode, .. } => mode,
        }
    }
}

fn resolve(command: &str, source: &StateSource, crit: &CriterionArgs) -> Result<Resolved, CliError> {
    let mut cfg = RunConfig::new(command);
    let pivot = match &crit.pivots {
        Some(flag) => config::resolve_pivots(flag)?,
        None => PivotChoice::default(),
    };
    cfg.pivots = Some(match pivot {
        PivotChoice::Fixed(n, m) => format!("{n},{m}"),
        PivotChoice::MaxOverAll => "all".to_string(),
    });
    let fixed = crit
        .params
        .as_deref()
        .map(config::load_params)
        .transpose()?;
    cfg.params_source = crit.params.as_ref().map(|p| p.display().to_string());
    let left_vec = crit
        .left
        .as_deref()
        .map(config::resolve_left)
        .transpose()?;

    let kind = match (&source.family, &source.state) {
        (Some(name), None) => {
            let family = config::resolve_family(name, source.a, source.eps)?;
            cfg.family = Some(family.name().to_string());
            if let StateFamily::Horodecki { a } = &family {
                cfg.a = Some(*a);
            }
            if let StateFamily::GhzPerturbed { eps } = &family {
                cfg.eps = Some(*eps);
            }
            let p = source.p.unwrap_or(1.0);
            cfg.p = Some(p);
            let dims = family.dims();
            let mut preset = Preset::for_family(&family)?;
            if let Some(flag) = &crit.basis {
                preset.bases = config::resolve_bases(flag, &dims)?;
                // The tuned weight directions belong to the preset
                // bases; a basis override invalidates them.
                preset.scaled = None;
            }
            if let Some(token) = &crit.criterion {
                preset.mode = config::resolve_criterion(token, left_vec.as_deref(), dims.len())?;
            } else if left_vec.is_some() {
                return Err(CliError::config("--left only applies to criterion thm4"));
            }
            if matches!(preset.mode, DetectionMode::FullSeparability) {
                preset.scaled = None;
            }
            if fixed.is_some() {
                preset.scaled = None;
            }
            echo_mode(&mut cfg, &preset.mode);
            cfg.dims = dims;
            cfg.bases = preset.bases.iter().map(|b| b.family().to_string()).collect();
            let ctx = PresetContext::new(preset)?.with_pivot(pivot);
            SourceKind::Family { ctx, p }
        }
        (None, Some(path)) => {
            let rho = stateio::load_state(path)?;
            let dims = rho.dims().to_vec();
            cfg.state_file = Some(path.display().to_string());
            let bases = match &crit.basis {
                Some(flag) => config::resolve_bases(flag, &dims)?,
                None => config::default_bases(&dims)?,
            };
            let mode = match &crit.criterion {
                Some(token) => config::resolve_criterion(token, left_vec.as_deref(), dims.len())?,
                None => {
                    if left_vec.is_some() {
                        return Err(CliError::config("--left only applies to criterion thm4"));
                    }
                    match dims.len() {
                        0 | 1 => {
                            return Err(CliError::config(
                                "detection needs at least two subsystems; the state file declares one",
                            ))
                        }
                        2 => DetectionMode::Partition(Bipartition::new(&[1], 2)?),
                        _ => DetectionMode::Gme,
                    }
                }
            };
            echo_mode(&mut cfg, &mode);
            cfg.dims = dims;
            cfg.bases = bases.iter().map(|b| b.family().to_string()).collect();
            let dec = decompose(&rho, &bases)?;
            SourceKind::File { dec, mode }
        }
        (Some(_), Some(_)) => {
            return Err(CliError::config("--family and --state are mutually exclusive"))
        }
        (None, None) => return Err(CliError::config("one of --family or --state is required")),
    };
    Ok(Resolved {
        cfg,
        pivot,
        fixed,
        kind,
    })
}

fn echo_mode(cfg: &mut RunConfig, mode: &DetectionMode) {
    let token = config::criterion_token(mode);
    cfg.criterion = Some(token.to_string());
    if token == "thm4" {
        if let DetectionMode::Partition(b) = mode {
            cfg.left = Some(b.left().to_vec());
        }
    }
}

fn cmd_basis_dump(args: BasisDumpArgs) -> Result<(), CliError> {
    let basis = config::basis_for(&args.basis, args.dim)?;
    let diag = basis.validate();
    let mut cfg = RunConfig::new("basis-dump");
    cfg.bases = vec![args.basis.clone()];
    cfg.dims = vec![args.dim];
    let elements: Vec<Value> = basis
        .elements()
        .iter()
        .map(|g| {
            let re: Vec<Vec<f64>> = (0..g.rows())
                .map(|r| (0..g.cols()).map(|c| g.at(r, c).re).collect())
                .collect();
            let im: Vec<Vec<f64>> = (0..g.rows())
                .map(|r| (0..g.cols()).map(|c| g.at(r, c).im).collect())
                .collect();
            json!({ "re": re, "im": im })
        })
        .collect();
    let worst_gram = diag.worst_gram_pair.map(|(i, j, z)| {
        json!({ "i": i, "j": j, "inner_re": z.re, "inner_im": z.im })
    });
    let passes = diag.passes();
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "config": cfg,
        "family": basis.family(),
        "dim": basis.dim(),
        "kappa": basis.kappa(),
        "elements": elements,
        "diagnostics": {
            "identity_deviation": diag.identity_deviation,
            "max_trace_abs": diag.max_trace_abs,
            "max_gram_deviation": diag.max_gram_deviation,
            "worst_gram_pair": worst_gram,
            "kappa_consistent": diag.kappa_ok,
            "non_hermitian": diag.non_hermitian,
            "passes": passes,
        },
    });
    write_output(&json_bytes(&value), args.out.as_deref())?;
    eprintln!(
        "basis {} dim {}: {} elements, diagnostics {}",
        basis.family(),
        basis.dim(),
        basis.len(),
        if passes { "pass" } else { "FAIL" }
    );
    Ok(())
}

fn cmd_state_dump(args: StateDumpArgs) -> Result<(), CliError> {
    let (rho, label) = match (&args.source.family, &args.source.state) {
        (Some(name), None) => {
            let family = config::resolve_family(name, args.source.a, args.source.eps)?;
            let p = args.source.p.unwrap_or(1.0);
            (family.at(p)?, format!("{} p={p}", family.name()))
        }
        (None, Some(path)) => (stateio::load_state(path)?, path.display().to_string()),
        _ => return Err(CliError::config("one of --family or --state is required")),
    };
    let bytes = match args.format.as_str() {
        "json" => stateio::state_json_bytes(&rho),
        "csv" => stateio::state_csv_bytes(&rho),
        "packed" | "hdf5-like" => stateio::state_packed_bytes(&rho),
        other => {
            return Err(CliError::config(format!(
                "unknown format '{other}' (expected json, csv, or packed)"
            )))
        }
    };
    write_output(&bytes, args.out.as_deref())?;
    eprintln!(
        "state {label}: dims {:?}, purity {:.6}",
        rho.dims(),
        rho.purity()
    );
    Ok(())
}

fn detect_envelope(
    cfg: &RunConfig,
    p: Option<f64>,
    scale: Option<f64>,
    params: &CriterionParams,
    report: &ModeReport,
) -> Value {
    let mut detection = serde_json::Map::new();
    if let Some(p) = p {
        detection.insert("p".to_string(), json!(p));
    }
    detection.insert("scale".to_string(), json!(scale));
    detection.insert("params".to_string(), json!(params));
    detection.insert("report".to_string(), json!(report));
    json!({
        "schema_version": SCHEMA_VERSION,
        "config": cfg,
        "verdict": verdict_name(report.verdict()),
        "detection": Value::Object(detection),
    })
}

fn cmd_detect(args: DetectArgs) -> Result<(), CliError> {
    let r = resolve("detect", &args.source, &args.crit)?;
    let (p, scale, params, report) = match &r.kind {
        SourceKind::Family { ctx, p } => {
            if let Some(params) = &r.fixed {
                let dec = ctx.decomposition_at(*p)?;
                let report = evaluate_mode(&dec, &ctx.preset().mode, params, r.pivot)?;
                (Some(*p), None, params.clone(), report)
            } else {
                let det = ctx.detect_at(*p)?;
                (Some(det.p), det.scale, det.params, det.report)
            }
        }
        SourceKind::File { dec, mode } => {
            let params = r
                .fixed
                .clone()
                .unwrap_or_else(CriterionParams::correlation_only);
            let report = evaluate_mode(dec, mode, &params, r.pivot)?;
            (None, None, params, report)
        }
    };
    let value = detect_envelope(&r.cfg, p, scale, &params, &report);
    write_output(&json_bytes(&value), args.out.as_deref())?;
    let mut line = format!(
        "{}: margin {:.6}",
        verdict_name(report.verdict()),
        report.margin()
    );
    if let Some(p) = p {
        line.push_str(&format!(" at p = {p}"));
    }
    if let Some(x) = scale {
        line.push_str(&format!(" (weight scale x = {x:.6})"));
    }
    eprintln!("{line}");
    Ok(())
}

fn cmd_scan(args: ScanArgs) -> Result<(), CliError> {
    if args.source.state.is_some() {
        return Err(CliError::config(
            "scan needs a --family; a state file is a single point, not a noise curve",
        ));
    }
    if args.source.p.is_some() {
        return Err(CliError::config(
            "--p does not apply to scan; the noise parameter is the scanned variable",
        ));
    }
    let mut r = resolve("scan", &args.source, &args.crit)?;
    r.cfg.p = None;
    let w = DEFAULT_SCAN;
    r.cfg.scan = Some(w);
    let SourceKind::Family { ctx, .. } = &r.kind else {
        unreachable!("state files were rejected above");
    };
    let result = if let Some(params) = &r.fixed {
        let slot: RefCell<Option<CriteriaError>> = RefCell::new(None);
        let res = scan_threshold(
            |p| match ctx.margin_fixed(p, params) {
                Ok(m) => m,
                Err(e) => {
                    slot.borrow_mut().get_or_insert(e);
                    f64::NEG_INFINITY
                }
            },
            w.lo,
            w.hi,
            w.coarse,
            w.tol,
        );
        if let Some(e) = slot.into_inner() {
            return Err(e.into());
        }
        res
    } else {
        ctx.scan(w.lo, w.hi, w.coarse, w.tol)?
    };
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "config": r.cfg,
        "threshold": result.threshold,
        "status": result.status,
        "result": result,
    });
    write_output(&json_bytes(&value), args.out.as_deref())?;
    let mut line = match result.status {
        ScanStatus::Converged => format!(
            "threshold p* = {:.6}",
            result.threshold.unwrap_or(f64::NAN)
        ),
        ScanStatus::PositiveAtStart => format!("margin already positive at p = {}", w.lo),
        ScanStatus::NoCrossing => format!("no threshold in [{}, {}]", w.lo, w.hi),
    };
    if result.crossings > 1 {
        line.push_str(&format!(
            " ({} sign changes: the margin curve is not monotone)",
            result.crossings
        ));
    }
    eprintln!("{line}");
    Ok(())
}

fn parse_shape(flag: &str) -> Result<ParamShape, CliError> {
    let parts: Vec<&str> = flag.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::config(format!(
            "--shape expects four lengths 'u,v,alpha,beta', got '{flag}'"
        )));
    }
    let mut lens = [0usize; 4];
    for (slot, part) in lens.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| CliError::config(format!("invalid length '{part}' in --shape")))?;
    }
    let shape = ParamShape {
        u_len: lens[0],
        v_len: lens[1],
        alpha_len: lens[2],
        beta_len: lens[3],
    };
    shape.validate()?;
    Ok(shape)
}

fn expand_constant(inner: &CriterionParams, shape: &ParamShape) -> CriterionParams {
    CriterionParams {
        u: vec![inner.u[0]; shape.u_len],
        v: vec![inner.v[0]; shape.v_len],
        alpha: inner.alpha.clone(),
        beta: inner.beta.clone(),
    }
}

fn cmd_optimize(args: OptimizeArgs) -> Result<(), CliError> {
    let mut r = resolve("optimize", &args.source, &args.crit)?;
    r.cfg.seed = Some(args.seed);
    let shape = match (&args.shape, &r.fixed) {
        (Some(flag), fixed) => {
            let shape = parse_shape(flag)?;
            if let Some(params) = fixed {
                if params.shape() != shape {
                    return Err(CliError::config(
                        "--shape disagrees with the vector lengths in --params",
                    ));
                }
            }
            shape
        }
        (None, Some(params)) => params.shape(),
        (None, None) => ParamShape {
            u_len: 1,
            v_len: 1,
            alpha_len: 1,
            beta_len: 1,
        },
    };
    let inner_shape = if args.constant_uv {
        ParamShape {
            u_len: 1,
            v_len: 1,
            ..shape
        }
    } else {
        shape
    };
    let initial_inner = r.fixed.as_ref().map(|p| {
        if args.constant_uv {
            CriterionParams {
                u: vec![p.u[0]],
                v: vec![p.v[0]],
                alpha: p.alpha.clone(),
                beta: p.beta.clone(),
            }
        } else {
            p.clone()
        }
    });
    let dec = match &r.kind {
        SourceKind::Family { ctx, p } => ctx.decomposition_at(*p)?,
        SourceKind::File { dec, .. } => dec.clone(),
    };
    let mode = r.mode().clone();
    let pivot = r.pivot;
    let opts = OptimizeOptions {
        restarts: args.restarts,
        evals_per_restart: args.evals,
        seed: args.seed,
        initial_scale: 0.1,
    };
    let failures = RefCell::new(0usize);
    let first_err: RefCell<Option<CriteriaError>> = RefCell::new(None);
    let objective = |inner: &CriterionParams| {
        let candidate = if args.constant_uv {
            expand_constant(inner, &shape)
        } else {
            inner.clone()
        };
        match evaluate_mode(&dec, &mode, &candidate, pivot) {
            Ok(report) => report.margin(),
            Err(e) => {
                *failures.borrow_mut() += 1;
                first_err.borrow_mut().get_or_insert(e);
                f64::NEG_INFINITY
            }
        }
    };
    let result = optimize_params(objective, &inner_shape, initial_inner.as_ref(), &opts)?;
    let fail_count = failures.into_inner();
    if !result.value.is_finite() {
        if let Some(e) = first_err.into_inner() {
            return Err(e.into());
        }
        return Err(CliError::Numerical(
            "optimization produced no finite margin".to_string(),
        ));
    }
    let best = if args.constant_uv {
        expand_constant(&result.params, &shape)
    } else {
        result.params.clone()
    };
    let report = evaluate_mode(&dec, &mode, &best, pivot)?;
    let mut result_obj = serde_json::Map::new();
    result_obj.insert("params".to_string(), json!(best));
    result_obj.insert("value".to_string(), json!(result.value));
    result_obj.insert("evaluations".to_string(), json!(result.evaluations));
    result_obj.insert("restarts".to_string(), json!(result.restarts));
    result_obj.insert(
        "budget_exhausted".to_string(),
        json!(result.budget_exhausted),
    );
    if fail_count > 0 {
        result_obj.insert("objective_failures".to_string(), json!(fail_count));
    }
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "config": r.cfg,
        "shape": {
            "u": shape.u_len,
            "v": shape.v_len,
            "alpha": shape.alpha_len,
            "beta": shape.beta_len,
        },
        "constant_uv": args.constant_uv,
        "result": Value::Object(result_obj),
        "verdict": verdict_name(report.verdict()),
        "report": report,
    });
    write_output(&json_bytes(&value), args.out.as_deref())?;
    eprintln!(
        "best margin {:.6e} after {} evaluations ({} restarts); verdict {}",
        result.value,
        result.evaluations,
        result.restarts,
        verdict_name(report.verdict())
    );
    Ok(())
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<(), CliError> {
    let table = tables::reproduce(&args.table)?;
    write_output(table.csv.as_bytes(), args.out.as_deref())?;
    for line in &table.summary {
        eprintln!("{line}");
    }
    Ok(())
}

fn cmd_figure(args: FigureArgs) -> Result<(), CliError> {
    let fig = surfaces::figure(&args.fig)?;
    write_output(fig.csv.as_bytes(), args.out.as_deref())?;
    eprintln!("{}", fig.summary);
    Ok(())
}
