//! Margin-surface CSV grids for external plotting.

use std::fmt::Write as _;
use std::sync::Mutex;

use sepcrit_criteria::{
    CriteriaError, CriterionParams, LogGrid, Preset, PresetContext, margin_surface,
};

use crate::config::CliError;

/// CSV body plus a one-line human summary.
pub struct FigureOutput {
    pub csv: String,
    pub summary: String,
}

fn noise_grid() -> Vec<f64> {
    (0..=100).map(|i| f64::from(i) / 100.0).collect()
}

fn render(header: &str, rows: &[(f64, f64, f64)]) -> String {
    let mut csv = String::new();
    csv.push_str(header);
    csv.push('\n');
    for (a, b, m) in rows {
        writeln!(csv, "{a},{b},{m}").unwrap();
    }
    csv
}

fn summarize(name: &str, header: &str, rows: &[(f64, f64, f64)]) -> String {
    let positive = rows.iter().filter(|(_, _, m)| *m > 0.0).count();
    format!(
        "figure {name}: {} cells ({header}), {positive} with positive margin",
        rows.len()
    )
}

/// Margin over (p, weight scale x) for a scaled preset.
fn scale_surface(preset: Preset, name: &str) -> Result<FigureOutput, CliError> {
    let scaled = preset.scaled.clone().ok_or_else(|| {
        CliError::config(format!("figure {name} needs a setup with scaled weights"))
    })?;
    let ctx = PresetContext::new(preset)?;
    let ps = noise_grid();
    let xs = LogGrid::default().points_vec();
    let slot: Mutex<Option<CriteriaError>> = Mutex::new(None);
    let rows = margin_surface(
        |p, x| match ctx.margin_fixed(p, &scaled.at(x)) {
            Ok(m) => m,
            Err(e) => {
                let mut guard = slot.lock().unwrap();
                guard.get_or_insert(e);
                f64::NEG_INFINITY
            }
        },
        &ps,
        &xs,
    );
    if let Some(e) = slot.into_inner().unwrap() {
        return Err(e.into());
    }
    Ok(FigureOutput {
        summary: summarize(name, "p,x", &rows),
        csv: render("p,x,margin", &rows),
    })
}

/// Margin over (p, perturbation eps) for the full-separability setup.
fn perturbation_surface() -> Result<FigureOutput, CliError> {
    let eps_grid: Vec<f64> = (0..=50).map(|i| f64::from(i) / 50.0).collect();
    let contexts: Vec<PresetContext> = eps_grid
        .iter()
        .map(|&eps| PresetContext::new(Preset::t4(eps)?))
        .collect::<Result<_, CriteriaError>>()?;
    let ps = noise_grid();
    let params = CriterionParams::correlation_only();
    let slot: Mutex<Option<CriteriaError>> = Mutex::new(None);
    let rows = margin_surface(
        |p, eps| {
            let idx = (eps * 50.0).round() as usize;
            match contexts[idx].margin_fixed(p, &params) {
                Ok(m) => m,
                Err(e) => {
                    let mut guard = slot.lock().unwrap();
                    guard.get_or_insert(e);
                    f64::NEG_INFINITY
                }
            }
        },
        &ps,
        &eps_grid,
    );
    if let Some(e) = slot.into_inner().unwrap() {
        return Err(e.into());
    }
    Ok(FigureOutput {
        summary: summarize("6", "p,eps", &rows),
        csv: render("p,eps,margin", &rows),
    })
}

/// Rebuilds one of the built-in margin surfaces.
pub fn figure(fig: &str) -> Result<FigureOutput, CliError> {
    match fig {
        "1" => scale_surface(Preset::t1()?, "1"),
        "2" => scale_surface(Preset::t2()?, "2"),
        "5" => scale_surface(Preset::t3()?, "5"),
        "6" => perturbation_surface(),
        other => Err(CliError::config(format!(
            "unknown figure '{other}' (expected 1, 2, 5, or 6)"
        ))),
    }
}
