//! Deterministic search utilities: scale maximization, threshold
//! scanning, and a restarted Nelder-Mead optimizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CriteriaError;
use crate::params::{CriterionParams, ParamShape};

/// Logarithmic evaluation grid for the scale search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogGrid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Default for LogGrid {
    fn default() -> Self {
        LogGrid {
            lo: 1e-3,
            hi: 10.0,
            points: 64,
        }
    }
}

impl LogGrid {
    /// The grid points, logarithmically spaced inclusive of both ends.
    pub fn points_vec(&self) -> Vec<f64> {
        let n = self.points.max(2);
        let (la, lb) = (self.lo.log10(), self.hi.log10());
        (0..n)
            .map(|i| 10f64.powf(la + (lb - la) * i as f64 / (n - 1) as f64))
            .collect()
    }
}

/// Location and value of a maximum over the scale parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScaleMax {
    pub x: f64,
    pub value: f64,
}

/// Default golden-section refinement depth.
pub const SCALE_ITERS: usize = 60;

/// Maximizes `f` over the grid, then refines around the grid argmax
/// with a fixed number of golden-section steps. Returns the better of
/// the grid maximum and the refined midpoint. Grid evaluation runs in
/// parallel; the result does not depend on scheduling.
pub fn maximize_over_scale<F>(f: F, grid: &LogGrid, iters: usize) -> ScaleMax
where
    F: Fn(f64) -> f64 + Sync,
{
    let xs = grid.points_vec();
    let vals: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect();
    let mut i = 0usize;
    for (j, &v) in vals.iter().enumerate() {
        if v > vals[i] {
            i = j;
        }
    }
    let best = vals[i];
    let best_x = xs[i];
    let mut a = xs[i.saturating_sub(1)];
    let mut b = xs[(i + 1).min(xs.len() - 1)];
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    let fmid = f(mid);
    if fmid > best {
        ScaleMax { x: mid, value: fmid }
    } else {
        ScaleMax {
            x: best_x,
            value: best,
        }
    }
}

/// How a threshold scan ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScanStatus {
    /// The leftmost sign change was bracketed and bisected.
    #[serde(rename = "ok")]
    Converged,
    /// The function was already positive at the lower end.
    #[serde(rename = "positive-at-lo")]
    PositiveAtStart,
    /// No positive value was found on the whole interval.
    #[serde(rename = "no-crossing")]
    NoCrossing,
}

/// Result of a leftmost-crossing scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanResult {
    pub threshold: Option<f64>,
    pub status: ScanStatus,
    /// Coarse samples `(p, f(p))` across the whole interval.
    pub samples: Vec<(f64, f64)>,
    /// Final bisection bracket, when one was refined.
    pub bracket: Option<(f64, f64)>,
    /// Entries into the positive region seen on the coarse grid; more
    /// than one means the margin curve is not monotone in sign.
    pub crossings: usize,
}

/// Finds the leftmost `p` in `[lo, hi]` where `f` becomes positive: a
/// coarse left-to-right walk with bisection of the first sign-change
/// bracket. The walk continues past the crossing so the full margin
/// curve is reported and additional crossings are counted.
pub fn scan_threshold<F>(f: F, lo: f64, hi: f64, coarse: f64, tol: f64) -> ScanResult
where
    F: Fn(f64) -> f64,
{
    let mut samples = Vec::new();
    let f_lo = f(lo);
    samples.push((lo, f_lo));
    if f_lo > 0.0 {
        return ScanResult {
            threshold: Some(lo),
            status: ScanStatus::PositiveAtStart,
            samples,
            bracket: None,
            crossings: 1,
        };
    }
    let mut prev = lo;
    let mut x = lo;
    let mut threshold = None;
    let mut bracket = None;
    while x < hi - 1e-15 {
        x = (x + coarse).min(hi);
        let fx = f(x);
        samples.push((x, fx));
        if fx > 0.0 && threshold.is_none() {
            let (mut a, mut b) = (prev, x);
            while b - a > tol {
                let mid = 0.5 * (a + b);
                if f(mid) > 0.0 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            threshold = Some(0.5 * (a + b));
            bracket = Some((a, b));
        }
        prev = x;
    }
    let crossings = samples
        .windows(2)
        .filter(|w| w[0].1 <= 0.0 && w[1].1 > 0.0)
        .count();
    let status = if threshold.is_some() {
        ScanStatus::Converged
    } else {
        ScanStatus::NoCrossing
    };
    ScanResult {
        threshold,
        status,
        samples,
        bracket,
        crossings,
    }
}

/// Evaluates a two-parameter margin on the product grid, row-parallel,
/// in row-major `(p, x)` order.
pub fn margin_surface<F>(f: F, ps: &[f64], xs: &[f64]) -> Vec<(f64, f64, f64)>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    ps.par_iter()
        .map(|&p| {
            xs.iter()
                .map(|&x| (p, x, f(p, x)))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Restart and budget policy for the derivative-free optimizer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizeOptions {
    /// Independent restarts; the first starts from the given initial
    /// parameters, later ones from standard-normal draws.
    pub restarts: usize,
    /// Objective evaluations allowed per restart.
    pub evals_per_restart: usize,
    pub seed: u64,
    /// Initial simplex edge length.
    pub initial_scale: f64,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            restarts: 8,
            evals_per_restart: 2000,
            seed: 0,
            initial_scale: 0.1,
        }
    }
}

/// Outcome of the restarted Nelder-Mead maximization.
#[derive(Clone, Debug, Serialize)]
pub struct OptimizeResult {
    pub params: CriterionParams,
    pub value: f64,
    pub evaluations: usize,
    pub restarts: usize,
    /// True when at least one restart stopped on its evaluation budget
    /// rather than simplex convergence.
    pub budget_exhausted: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;
const DEGENERATE_SPREAD: f64 = 1e-12;

/// Maximizes `objective` over parameter sets of the given shape with a
/// restarted Nelder-Mead simplex (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Deterministic for a fixed seed; the
/// best value ever evaluated is returned, so more budget never hurts.
/// A zero evaluation budget returns the initial parameters unchanged.
pub fn optimize_params<F>(
    objective: F,
    shape: &ParamShape,
    initial: Option<&CriterionParams>,
    opts: &OptimizeOptions,
) -> Result<OptimizeResult, CriteriaError>
where
    F: Fn(&CriterionParams) -> f64,
{
    shape.validate()?;
    if let Some(init) = initial {
        if init.shape() != *shape {
            return Err(CriteriaError::InvalidParams(
                "initial parameters do not match the requested shape".into(),
            ));
        }
    }
    let n = shape.total();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let start_point = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
    };
    let initial_flat = match initial {
        Some(p) => p.flatten(),
        None => start_point(&mut rng),
    };

    if opts.evals_per_restart == 0 || opts.restarts == 0 {
        let params = shape.params_from(&initial_flat)?;
        let value = objective(&params);
        return Ok(OptimizeResult {
            params,
            value,
            evaluations: 1,
            restarts: 0,
            budget_exhausted: true,
        });
    }

    let mut best_flat = initial_flat.clone();
    let mut best_value = f64::NEG_INFINITY;
    let mut total_evals = 0usize;
    let mut any_exhausted = false;

    for restart in 0..opts.restarts {
        let x0 = if restart == 0 {
            initial_flat.clone()
        } else {
            start_point(&mut rng)
        };
        let mut budget = opts.evals_per_restart;
        // eval returns None once the restart budget is exhausted.
        let eval = |x: &[f64],
                        budget: &mut usize,
                        best_flat: &mut Vec<f64>,
                        best_value: &mut f64,
                        total: &mut usize|
         -> Option<f64> {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            *total += 1;
            let params = shape.params_from(x).expect("dimension preserved");
            let v = objective(&params);
            // Strictly better wins; exact ties resolve to the
            // lexicographically smaller parameter vector so the result
            // is independent of evaluation order.
            if v > *best_value || (v == *best_value && x < best_flat.as_slice()) {
                *best_value = v;
                *best_flat = x.to_vec();
            }
            Some(v)
        };

        // Simplex of n+1 points; we minimize the negated objective.
        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.clone());
        for i in 0..n {
            let mut p = x0.clone();
            p[i] += opts.initial_scale;
            simplex.push(p);
        }
        let mut values: Vec<f64> = Vec::with_capacity(n + 1);
        let mut exhausted = false;
        for p in &simplex {
            match eval(p, &mut budget, &mut best_flat, &mut best_value, &mut total_evals) {
                Some(v) => values.push(-v),
                None => {
                    exhausted = true;
                    break;
                }
            }
        }
        if exhausted {
            any_exhausted = true;
            continue;
        }

        loop {
            // Order ascending by negated objective (best first).
            let mut order: Vec<usize> = (0..simplex.len()).collect();
            order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
            let simplex_sorted: Vec<Vec<f64>> =
                order.iter().map(|&i| simplex[i].clone()).collect();
            let values_sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
            simplex = simplex_sorted;
            values = values_sorted;

            let spread = simplex
                .iter()
                .skip(1)
                .map(|p| {
                    p.iter()
                        .zip(&simplex[0])
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            if spread < DEGENERATE_SPREAD {
                break;
            }

            let worst = simplex.len() - 1;
            let centroid: Vec<f64> = (0..n)
                .map(|i| simplex[..worst].iter().map(|p| p[i]).sum::<f64>() / worst as f64)
                .collect();
            let shifted = |coeff: f64| -> Vec<f64> {
                (0..n)
                    .map(|i| centroid[i] + coeff * (centroid[i] - simplex[worst][i]))
                    .collect()
            };

            let xr = shifted(REFLECT);
            let fr = match eval(&xr, &mut budget, &mut best_flat, &mut best_value, &mut total_evals)
            {
                Some(v) => -v,
                None => break,
            };
            if fr < values[0] {
                let xe = shifted(REFLECT * EXPAND);
                match eval(&xe, &mut budget, &mut best_flat, &mut best_value, &mut total_evals) {
                    Some(v) => {
                        let fe = -v;
                        if fe < fr {
                            simplex[worst] = xe;
                            values[worst] = fe;
                        } else {
                            simplex[worst] = xr;
                            values[worst] = fr;
                        }
                    }
                    None => break,
                }
            } else if fr < values[worst - 1] {
                simplex[worst] = xr;
                values[worst] = fr;
            } else {
                let (xc, threshold) = if fr < values[worst] {
                    (shifted(REFLECT * CONTRACT), fr)
                } else {
                    (shifted(-CONTRACT), values[worst])
                };
                let fc = match eval(
                    &xc,
                    &mut budget,
                    &mut best_flat,
                    &mut best_value,
                    &mut total_evals,
                ) {
                    Some(v) => -v,
                    None => break,
                };
                if fc < threshold {
                    simplex[worst] = xc;
                    values[worst] = fc;
                } else {
                    // Shrink toward the best vertex.
                    let mut broke = false;
                    for i in 1..simplex.len() {
                        for j in 0..n {
                            simplex[i][j] =
                                simplex[0][j] + SHRINK * (simplex[i][j] - simplex[0][j]);
                        }
                        match eval(
                            &simplex[i],
                            &mut budget,
                            &mut best_flat,
                            &mut best_value,
                            &mut total_evals,
                        ) {
                            Some(v) => values[i] = -v,
                            None => {
                                broke = true;
                                break;
                            }
                        }
                    }
                    if broke {
                        break;
                    }
                }
            }
        }
        if budget == 0 {
            any_exhausted = true;
        }
    }

    Ok(OptimizeResult {
        params: shape.params_from(&best_flat)?,
        value: best_value,
        evaluations: total_evals,
        restarts: opts.restarts,
        budget_exhausted: any_exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_grid_covers_endpoints() {
        let g = LogGrid::default();
        let xs = g.points_vec();
        assert_eq!(xs.len(), 64);
        assert!((xs[0] - 1e-3).abs() < 1e-15);
        assert!((xs[63] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn scale_maximum_of_smooth_function() {
        // f(x) = -(ln x - ln 2)^2 peaks at x = 2.
        let f = |x: f64| -(x.ln() - 2.0f64.ln()).powi(2);
        let m = maximize_over_scale(f, &LogGrid::default(), SCALE_ITERS);
        assert!((m.x - 2.0).abs() < 1e-3, "x = {}", m.x);
        assert!(m.value > -1e-8);
    }

    #[test]
    fn threshold_scan_finds_leftmost_crossing() {
        let f = |p: f64| p - 0.4375;
        let r = scan_threshold(f, 0.0, 1.0, 0.01, 1e-6);
        assert_eq!(r.status, ScanStatus::Converged);
        assert!((r.threshold.unwrap() - 0.4375).abs() < 1e-6);
        assert_eq!(r.crossings, 1);
        assert_eq!(r.samples.len(), 101);
        let (a, b) = r.bracket.unwrap();
        assert!(f(a) <= 0.0 && f(b) > 0.0 && b - a <= 1e-6);

        let always = scan_threshold(|_| 1.0, 0.0, 1.0, 0.01, 1e-6);
        assert_eq!(always.status, ScanStatus::PositiveAtStart);
        assert_eq!(always.threshold, Some(0.0));

        let never = scan_threshold(|_| -1.0, 0.0, 1.0, 0.01, 1e-6);
        assert_eq!(never.status, ScanStatus::NoCrossing);
        assert_eq!(never.threshold, None);
        assert_eq!(never.samples.len(), 101);
    }

    #[test]
    fn threshold_scan_counts_multiple_crossings() {
        // Positive on (0.2, 0.4) and (0.7, 1.0): two separate entries.
        let f = |p: f64| {
            if (0.2..0.4).contains(&p) || p > 0.7 {
                1.0
            } else {
                -1.0
            }
        };
        let r = scan_threshold(f, 0.0, 1.0, 0.01, 1e-6);
        assert_eq!(r.status, ScanStatus::Converged);
        assert!((r.threshold.unwrap() - 0.2).abs() < 0.011);
        assert_eq!(r.crossings, 2);
    }

    #[test]
    fn surface_is_row_major_and_complete() {
        let ps = [0.0, 0.5];
        let xs = [1.0, 2.0, 3.0];
        let rows = margin_surface(|p, x| p + x, &ps, &xs);
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0], (0.0, 1.0, 1.0));
        assert_eq!(rows[4], (0.5, 2.0, 2.5));
    }

    fn quad_shape() -> ParamShape {
        ParamShape {
            u_len: 1,
            v_len: 1,
            alpha_len: 1,
            beta_len: 1,
        }
    }

    #[test]
    fn optimizer_finds_quadratic_maximum() {
        // Maximum 7 at u=1, v=-2, alpha=0.5, beta=3.
        let target = [1.0, -2.0, 0.5, 3.0];
        let f = |p: &CriterionParams| {
            let x = p.flatten();
            7.0 - x
                .iter()
                .zip(&target)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
        };
        let r = optimize_params(f, &quad_shape(), None, &OptimizeOptions::default()).unwrap();
        assert!(r.value > 7.0 - 1e-6, "value {}", r.value);
        assert!(r.evaluations <= 8 * 2000);
    }

    #[test]
    fn optimizer_is_deterministic_and_monotone() {
        let f = |p: &CriterionParams| -p.flatten().iter().map(|x| x * x).sum::<f64>();
        let a = optimize_params(f, &quad_shape(), None, &OptimizeOptions::default()).unwrap();
        let b = optimize_params(f, &quad_shape(), None, &OptimizeOptions::default()).unwrap();
        assert_eq!(a.params, b.params);
        assert_eq!(a.value, b.value);

        let small = optimize_params(
            f,
            &quad_shape(),
            None,
            &OptimizeOptions {
                evals_per_restart: 50,
                ..OptimizeOptions::default()
            },
        )
        .unwrap();
        assert!(a.value >= small.value - 1e-15);
        assert!(small.budget_exhausted);
    }

    #[test]
    fn zero_budget_returns_initial() {
        let init = CriterionParams::correlation_only();
        let r = optimize_params(
            |_| 42.0,
            &quad_shape(),
            Some(&init),
            &OptimizeOptions {
                evals_per_restart: 0,
                ..OptimizeOptions::default()
            },
        )
        .unwrap();
        assert_eq!(r.params, init);
        assert_eq!(r.value, 42.0);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let init = CriterionParams {
            u: vec![0.0, 0.0],
            v: vec![0.0],
            alpha: vec![1.0],
            beta: vec![1.0],
        };
        assert!(optimize_params(|_| 0.0, &quad_shape(), Some(&init), &Default::default()).is_err());
    }
}
