//! Hermitian eigendecomposition via cyclic Jacobi rotations.
//!
//! The solver applies two-sided unitary rotations in a fixed (p, q) sweep
//! order until the off-diagonal Frobenius mass falls below a fixed
//! fraction of the input norm. Jacobi is slower than tridiagonalization
//! approaches but simple, deterministic, and accurate to high relative
//! precision on the small matrices this workspace produces.

use num_complex::Complex;

use crate::error::CoreError;
use crate::matrix::Mat;
use crate::scalar::{real, to_f64, Real};

/// Maximum number of full cyclic sweeps before giving up.
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order, with eigenvectors as matrix columns
/// when requested (`h * v_k = lambda_k * v_k`).
#[derive(Clone, Debug)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: Option<Mat<T>>,
}

fn off_diag_mass<T: Real>(a: &Mat<T>) -> T {
    let n = a.rows();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc = acc + a.at(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Convergence threshold relative to the input Frobenius norm. For `f64`
/// this is exactly 1e-14; wider component types fall back to a small
/// multiple of their epsilon so the loop can still terminate.
fn convergence_factor<T: Real>() -> T {
    let fixed = real::<T>(1e-14);
    let eps_based = T::epsilon() * real::<T>(8.0);
    if eps_based > fixed {
        eps_based
    } else {
        fixed
    }
}

fn jacobi<T: Real>(
    mut a: Mat<T>,
    want_vectors: bool,
) -> Result<(Vec<T>, Option<Mat<T>>), CoreError> {
    let n = a.rows();
    let frob = a.frobenius_norm();
    let threshold = frob * convergence_factor::<T>();
    // Entries this small cannot lift the off-diagonal mass above the
    // convergence threshold, so rotating on them is pointless.
    let skip = {
        let rel = threshold / real::<T>((10 * n.max(1) * n.max(1)) as f64);
        let floor = T::min_positive_value() * real::<T>(1e6);
        if rel > floor {
            rel
        } else {
            floor
        }
    };

    let mut v = if want_vectors {
        Some(Mat::identity(n))
    } else {
        None
    };

    let mut converged = frob == T::zero();
    for _sweep in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off = off_diag_mass(&a);
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let g = a.at(p, q);
                let ag = g.norm();
                if ag <= skip {
                    continue;
                }
                let app = a.at(p, p).re;
                let aqq = a.at(q, q).re;
                let tau = (aqq - app) / (ag + ag);
                // Root of t^2 + 2*tau*t - 1 = 0 with smaller magnitude;
                // the closed form overflows for huge tau, where the
                // asymptotic 1/(2*tau) is exact to working precision.
                let t = if tau.abs() > real::<T>(1e10) {
                    (tau + tau).recip()
                } else if tau == T::zero() {
                    T::one()
                } else {
                    let sgn = if tau > T::zero() { T::one() } else { -T::one() };
                    sgn / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let c = (T::one() + t * t).sqrt().recip();
                let s = t * c;
                let w = g / ag;
                let sw = w * s;
                let swc = w.conj() * s;

                // Right action (columns p and q).
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    a.set(k, p, akp * c - akq * swc);
                    a.set(k, q, akp * sw + akq * c);
                }
                // Left action (rows p and q).
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    a.set(p, k, apk * c - aqk * sw);
                    a.set(q, k, apk * swc + aqk * c);
                }
                // The rotation annihilates (p, q) analytically; pin the
                // entries and keep the diagonal real to stop rounding
                // noise from accumulating over sweeps.
                let zero = Complex::new(T::zero(), T::zero());
                a.set(p, q, zero);
                a.set(q, p, zero);
                let dp = a.at(p, p).re;
                let dq = a.at(q, q).re;
                a.set(p, p, Complex::new(dp, T::zero()));
                a.set(q, q, Complex::new(dq, T::zero()));

                if let Some(vm) = v.as_mut() {
                    for k in 0..n {
                        let vkp = vm.at(k, p);
                        let vkq = vm.at(k, q);
                        vm.set(k, p, vkp * c - vkq * swc);
                        vm.set(k, q, vkp * sw + vkq * c);
                    }
                }
            }
        }
    }
    if !converged {
        let off = off_diag_mass(&a);
        if off > threshold {
            return Err(CoreError::NoConvergence {
                sweeps: MAX_SWEEPS,
                off: to_f64(off),
            });
        }
    }

    // Sort descending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a.at(i, i).re).collect();
    order.sort_by(|&i, &j| {
        diag[j]
            .partial_cmp(&diag[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues: Vec<T> = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = v.map(|vm| {
        Mat::from_fn(n, n, |i, j| vm.at(i, order[j]))
    });
    Ok((eigenvalues, eigenvectors))
}

fn hermiticity_tolerance<T: Real>() -> T {
    let fixed = real::<T>(1e-12);
    let eps_based = T::epsilon() * real::<T>(64.0);
    if eps_based > fixed {
        eps_based
    } else {
        fixed
    }
}

fn check_and_symmetrize<T: Real>(h: &Mat<T>) -> Result<Mat<T>, CoreError> {
    if !h.is_square() {
        return Err(CoreError::Shape(format!(
            "eigendecomposition of non-square {}x{} matrix",
            h.rows(),
            h.cols()
        )));
    }
    let dev = h.hermitian_deviation()?;
    let tol = hermiticity_tolerance::<T>();
    if dev > tol {
        return Err(CoreError::NotHermitian {
            deviation: to_f64(dev),
            tolerance: to_f64(tol),
        });
    }
    // Work on the Hermitian average so rounding asymmetry in the input
    // cannot bias the rotations.
    let half = Complex::new(real::<T>(0.5), T::zero());
    h.add(&h.dagger()).map(|s| s.scale(half))
}

/// Full eigendecomposition of a Hermitian matrix. Eigenvalues descend;
/// eigenvector k is column k of `eigenvectors`.
pub fn hermitian_eigen<T: Real>(h: &Mat<T>) -> Result<Spectrum<T>, CoreError> {
    let hs = check_and_symmetrize(h)?;
    let (eigenvalues, eigenvectors) = jacobi(hs, true)?;
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only, in descending order. Skips eigenvector accumulation.
pub fn hermitian_eigenvalues<T: Real>(h: &Mat<T>) -> Result<Vec<T>, CoreError> {
    let hs = check_and_symmetrize(h)?;
    let (eigenvalues, _) = jacobi(hs, false)?;
    Ok(eigenvalues)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: Real>(h: &Mat<T>) -> Result<T, CoreError> {
    let vals = hermitian_eigenvalues(h)?;
    vals.last().copied().ok_or_else(|| {
        CoreError::Shape("min eigenvalue of empty matrix".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn residual(h: &Mat<f64>, spec: &Spectrum<f64>) -> f64 {
        let v = spec.eigenvectors.as_ref().unwrap();
        let mut worst = 0.0f64;
        for k in 0..h.rows() {
            let col: Vec<C64> = (0..h.rows()).map(|i| v.at(i, k)).collect();
            let hv = h.mul_vec(&col).unwrap();
            for i in 0..h.rows() {
                let d = (hv[i] - col[i] * spec.eigenvalues[k]).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    #[test]
    fn diagonal_matrix_sorts_descending() {
        let h = Mat::from_rows(vec![
            vec![r(3.0), r(0.0), r(0.0)],
            vec![r(0.0), r(1.0), r(0.0)],
            vec![r(0.0), r(0.0), r(2.0)],
        ])
        .unwrap();
        let s = hermitian_eigen(&h).unwrap();
        assert_eq!(s.eigenvalues, vec![3.0, 2.0, 1.0]);
        assert!(residual(&h, &s) < 1e-12);
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let h = Mat::from_rows(vec![vec![r(0.0), r(1.0)], vec![r(1.0), r(0.0)]]).unwrap();
        let vals = hermitian_eigenvalues(&h).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] + 1.0).abs() < 1e-14);
        assert!((min_eigenvalue(&h).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_matches_known_spectrum() {
        // Pauli-y: eigenvalues +-1.
        let h = Mat::from_rows(vec![
            vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        ])
        .unwrap();
        let s = hermitian_eigen(&h).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] + 1.0).abs() < 1e-14);
        assert!(residual(&h, &s) < 1e-12);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..20 {
            let n = 2 + (trial % 7);
            let raw = Mat::from_fn(n, n, |_, _| {
                C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            let h = raw.add(&raw.dagger()).unwrap();
            let s = hermitian_eigen(&h).unwrap();
            // Trace equals eigenvalue sum.
            let tr = h.trace().unwrap().re;
            let sum: f64 = s.eigenvalues.iter().sum();
            assert!((tr - sum).abs() < 1e-10 * h.frobenius_norm().max(1.0));
            assert!(residual(&h, &s) < 1e-10 * h.frobenius_norm());
            // Descending order.
            for w in s.eigenvalues.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let h = Mat::from_rows(vec![vec![r(0.0), r(1.0)], vec![r(0.5), r(0.0)]]).unwrap();
        match hermitian_eigen(&h) {
            Err(CoreError::NotHermitian { deviation, .. }) => {
                assert!((deviation - 0.5).abs() < 1e-15);
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn zero_matrix_is_fine() {
        let h = Mat::<f64>::zeros(3, 3);
        let vals = hermitian_eigenvalues(&h).unwrap();
        assert_eq!(vals, vec![0.0, 0.0, 0.0]);
    }
}
