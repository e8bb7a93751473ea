//! Consistency checks reducing the general detection bound to known
//! closed forms for special parameter choices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bipartition::Bipartition;
use crate::bounds::partition_bound;
use crate::error::CriteriaError;
use crate::params::CriterionParams;

/// Outcome of one family of reduction checks.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionCheck {
    pub name: &'static str,
    pub trials: usize,
    pub worst_rel_err: f64,
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

fn general_bound(
    da: usize,
    db: usize,
    ka: f64,
    kb: f64,
    params: &CriterionParams,
) -> Result<f64, CriteriaError> {
    let part = Bipartition::new(&[1], 2)?;
    partition_bound(&[da, db], &[ka, kb], &part, params)
}

/// Runs all reduction families: `trials` random dimension/parameter
/// tuples per family, comparing the general bipartite bound against
/// its closed form. Relative errors are measured against
/// `max(1, |closed form|)`.
pub fn run_reduction_checks(trials: usize, seed: u64) -> Result<Vec<ReductionCheck>, CriteriaError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    // Pure correlation test with kappa = 2 on both sides:
    // bound = sqrt(dA dB (dA - 1)(dB - 1)) / 2.
    {
        let mut worst = 0f64;
        for _ in 0..trials {
            let da = rng.gen_range(2..=5usize);
            let db = rng.gen_range(2..=5usize);
            let params = CriterionParams {
                u: vec![0.0],
                v: vec![0.0],
                alpha: vec![1.0],
                beta: vec![1.0],
            };
            let got = general_bound(da, db, 2.0, 2.0, &params)?;
            let want = ((da * db * (da - 1) * (db - 1)) as f64).sqrt() / 2.0;
            worst = worst.max(rel_err(got, want));
        }
        checks.push(ReductionCheck {
            name: "zero_uv_kappa2",
            trials,
            worst_rel_err: worst,
        });
    }

    // Constant vectors u = (x,..,x), v = (y,..,y) of length l with
    // kappa = 2: bound = sqrt((l x^2 + (dA^2-dA)/2)(l y^2 + (dB^2-dB)/2)).
    {
        let mut worst = 0f64;
        for _ in 0..trials {
            let da = rng.gen_range(2..=5usize);
            let db = rng.gen_range(2..=5usize);
            let l = rng.gen_range(1..=4usize);
            let x = rng.gen_range(0.1..3.0);
            let y = rng.gen_range(0.1..3.0);
            let params = CriterionParams {
                u: vec![x; l],
                v: vec![y; l],
                alpha: vec![1.0],
                beta: vec![1.0],
            };
            let got = general_bound(da, db, 2.0, 2.0, &params)?;
            let fa = l as f64 * x * x + (da * da - da) as f64 / 2.0;
            let fb = l as f64 * y * y + (db * db - db) as f64 / 2.0;
            let want = (fa * fb).sqrt();
            worst = worst.max(rel_err(got, want));
        }
        checks.push(ReductionCheck {
            name: "const_vec_kappa2",
            trials,
            worst_rel_err: worst,
        });
    }

    // kappa = d on both sides:
    // bound = sqrt((l x^2 + dA - 1)(l y^2 + dB - 1)).
    {
        let mut worst = 0f64;
        for _ in 0..trials {
            let da = rng.gen_range(2..=5usize);
            let db = rng.gen_range(2..=5usize);
            let l = rng.gen_range(1..=4usize);
            let x = rng.gen_range(0.1..3.0);
            let y = rng.gen_range(0.1..3.0);
            let params = CriterionParams {
                u: vec![x; l],
                v: vec![y; l],
                alpha: vec![1.0],
                beta: vec![1.0],
            };
            let got = general_bound(da, db, da as f64, db as f64, &params)?;
            let want = ((l as f64 * x * x + (da - 1) as f64)
                * (l as f64 * y * y + (db - 1) as f64))
                .sqrt();
            worst = worst.max(rel_err(got, want));
        }
        checks.push(ReductionCheck {
            name: "kappa_d",
            trials,
            worst_rel_err: worst,
        });
    }

    // Free vectors with unit alpha/beta and kappa = 2:
    // bound = sqrt((|u|^2 + (dA^2-dA)/2)(|v|^2 + (dB^2-dB)/2)).
    {
        let mut worst = 0f64;
        for _ in 0..trials {
            let da = rng.gen_range(2..=5usize);
            let db = rng.gen_range(2..=5usize);
            let lu = rng.gen_range(1..=4usize);
            let lv = rng.gen_range(1..=4usize);
            let u: Vec<f64> = (0..lu).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let v: Vec<f64> = (0..lv).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let params = CriterionParams {
                u: u.clone(),
                v: v.clone(),
                alpha: vec![1.0],
                beta: vec![1.0],
            };
            let got = general_bound(da, db, 2.0, 2.0, &params)?;
            let nu: f64 = u.iter().map(|a| a * a).sum();
            let nv: f64 = v.iter().map(|a| a * a).sum();
            let want = ((nu + (da * da - da) as f64 / 2.0) * (nv + (db * db - db) as f64 / 2.0))
                .sqrt();
            worst = worst.max(rel_err(got, want));
        }
        checks.push(ReductionCheck {
            name: "free_vec_kappa2",
            trials,
            worst_rel_err: worst,
        });
    }

    // Arbitrary normalizations kappa_A, kappa_B:
    // bound = sqrt((l x^2 + (dA^2-dA)/kA)(l y^2 + (dB^2-dB)/kB)).
    {
        let mut worst = 0f64;
        for _ in 0..trials {
            let da = rng.gen_range(2..=5usize);
            let db = rng.gen_range(2..=5usize);
            let ka = rng.gen_range(1.0..da as f64);
            let kb = rng.gen_range(1.0..db as f64);
            let l = rng.gen_range(1..=4usize);
            let x = rng.gen_range(0.1..3.0);
            let y = rng.gen_range(0.1..3.0);
            let params = CriterionParams {
                u: vec![x; l],
                v: vec![y; l],
                alpha: vec![1.0],
                beta: vec![1.0],
            };
            let got = general_bound(da, db, ka, kb, &params)?;
            let want = ((l as f64 * x * x + (da * da - da) as f64 / ka)
                * (l as f64 * y * y + (db * db - db) as f64 / kb))
                .sqrt();
            worst = worst.max(rel_err(got, want));
        }
        checks.push(ReductionCheck {
            name: "general_kappa",
            trials,
            worst_rel_err: worst,
        });
    }

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_reductions_hold_tightly() {
        let checks = run_reduction_checks(50, 7).unwrap();
        assert_eq!(checks.len(), 5);
        for c in &checks {
            assert_eq!(c.trials, 50);
            assert!(
                c.worst_rel_err <= 1e-12,
                "{} worst {}",
                c.name,
                c.worst_rel_err
            );
        }
    }

    #[test]
    fn reductions_are_seeded() {
        let a = run_reduction_checks(10, 3).unwrap();
        let b = run_reduction_checks(10, 3).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.worst_rel_err, y.worst_rel_err);
        }
    }
}
