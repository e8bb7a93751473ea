//! Built-in state families and seeded random state generators.
//!
//! Each family is a one-parameter affine segment `at(p) = (1-p) rho_0 +
//! p rho_1` between two fixed endpoints, which is the form every
//! detection scan in this workspace consumes.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use sepcrit_core::{for_each_index, C64, Mat64};

use crate::bloch::DensityMatrix;
use crate::error::QuantumError;

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// The 3x3 bound entangled state built from the five-member orthogonal
/// unextendible product basis: `(I - sum |phi_i><phi_i|)/4`.
pub fn bennett_state() -> DensityMatrix {
    let s = 1.0 / 2.0f64.sqrt();
    let mut members: Vec<[C64; 9]> = Vec::new();
    let mut v;
    v = [r(0.0); 9];
    v[0] = r(s);
    v[1] = r(-s);
    members.push(v);
    v = [r(0.0); 9];
    v[2] = r(s);
    v[5] = r(-s);
    members.push(v);
    v = [r(0.0); 9];
    v[7] = r(s);
    v[8] = r(-s);
    members.push(v);
    v = [r(0.0); 9];
    v[3] = r(s);
    v[6] = r(-s);
    members.push(v);
    v = [r(1.0 / 3.0); 9];
    members.push(v);

    let mut mat = Mat64::identity(9);
    for m in &members {
        for i in 0..9 {
            for j in 0..9 {
                let cur = mat.at(i, j);
                mat.set(i, j, cur - m[i] * m[j].conj());
            }
        }
    }
    let mat = mat.scale(r(0.25));
    DensityMatrix::new(vec![3, 3], mat).expect("fixed construction is a valid state")
}

/// The 2x4 one-parameter bound entangled family, `a` in [0, 1].
pub fn horodecki_state(a: f64) -> Result<DensityMatrix, QuantumError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(QuantumError::InvalidState(format!(
            "family parameter a must be in [0, 1], got {a}"
        )));
    }
    let q = (1.0 - a * a).sqrt() / 2.0;
    let h = (1.0 + a) / 2.0;
    let rows: [[f64; 8]; 8] = [
        [a, 0.0, 0.0, 0.0, 0.0, a, 0.0, 0.0],
        [0.0, a, 0.0, 0.0, 0.0, 0.0, a, 0.0],
        [0.0, 0.0, a, 0.0, 0.0, 0.0, 0.0, a],
        [0.0, 0.0, 0.0, a, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, h, 0.0, 0.0, q],
        [a, 0.0, 0.0, 0.0, 0.0, a, 0.0, 0.0],
        [0.0, a, 0.0, 0.0, 0.0, 0.0, a, 0.0],
        [0.0, 0.0, a, 0.0, q, 0.0, 0.0, h],
    ];
    let norm = 7.0 * a + 1.0;
    let mat = Mat64::from_fn(8, 8, |i, j| r(rows[i][j] / norm));
    DensityMatrix::new(vec![2, 4], mat)
}

/// The pure state `(|0>|0> + |1>|1>)/sqrt(2)` on dimensions 2x4 that the
/// one-parameter family above is mixed towards.
pub fn horodecki_injection() -> DensityMatrix {
    let mut amps = vec![r(0.0); 8];
    amps[0] = r(1.0);
    amps[5] = r(1.0);
    DensityMatrix::from_pure(vec![2, 4], &amps).expect("fixed construction is a valid state")
}

/// A fixed genuinely entangled pure state on dimensions 3x3x2 with five
/// equal-weight computational components.
pub fn state_332() -> DensityMatrix {
    let mut amps = vec![r(0.0); 18];
    for (i, j, k) in [(1, 0, 0), (2, 1, 0), (0, 0, 1), (1, 1, 1), (2, 2, 1)] {
        amps[6 * i + 2 * j + k] = r(1.0);
    }
    DensityMatrix::from_pure(vec![3, 3, 2], &amps).expect("fixed construction is a valid state")
}

/// The three-qubit state `(|000> + eps |110> + |111>)` normalized.
pub fn ghz_perturbed_state(eps: f64) -> DensityMatrix {
    let mut amps = vec![r(0.0); 8];
    amps[0] = r(1.0);
    amps[6] = r(eps);
    amps[7] = r(1.0);
    DensityMatrix::from_pure(vec![2, 2, 2], &amps).expect("fixed construction is a valid state")
}

/// A one-parameter affine family of states, `at(p) = (1-p) rho_0 + p rho_1`.
#[derive(Clone, Debug, PartialEq)]
pub enum StateFamily {
    /// White noise towards the 3x3 bound entangled state.
    Bennett,
    /// The 2x4 bound entangled state mixed towards a fixed pure state.
    Horodecki { a: f64 },
    /// White noise towards the fixed 3x3x2 pure state.
    Werner332,
    /// White noise towards the perturbed three-qubit GHZ state.
    GhzPerturbed { eps: f64 },
}

impl StateFamily {
    /// Subsystem dimensions of the family.
    pub fn dims(&self) -> Vec<usize> {
        match self {
            StateFamily::Bennett => vec![3, 3],
            StateFamily::Horodecki { .. } => vec![2, 4],
            StateFamily::Werner332 => vec![3, 3, 2],
            StateFamily::GhzPerturbed { .. } => vec![2, 2, 2],
        }
    }

    /// Stable identifier used by the command-line interface.
    pub fn name(&self) -> &'static str {
        match self {
            StateFamily::Bennett => "bennett",
            StateFamily::Horodecki { .. } => "horodecki",
            StateFamily::Werner332 => "werner332",
            StateFamily::GhzPerturbed { .. } => "ghzpert",
        }
    }

    /// The two affine endpoints `(rho_0, rho_1)`.
    pub fn endpoints(&self) -> Result<(DensityMatrix, DensityMatrix), QuantumError> {
        match self {
            StateFamily::Bennett => Ok((
                DensityMatrix::maximally_mixed(vec![3, 3])?,
                bennett_state(),
            )),
            StateFamily::Horodecki { a } => Ok((horodecki_state(*a)?, horodecki_injection())),
            StateFamily::Werner332 => Ok((
                DensityMatrix::maximally_mixed(vec![3, 3, 2])?,
                state_332(),
            )),
            StateFamily::GhzPerturbed { eps } => Ok((
                DensityMatrix::maximally_mixed(vec![2, 2, 2])?,
                ghz_perturbed_state(*eps),
            )),
        }
    }

    /// The family member at parameter `p` in [0, 1].
    pub fn at(&self, p: f64) -> Result<DensityMatrix, QuantumError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(QuantumError::InvalidState(format!(
                "mixing parameter p must be in [0, 1], got {p}"
            )));
        }
        let (rho0, rho1) = self.endpoints()?;
        DensityMatrix::mix(&rho0, &rho1, p)
    }
}

fn gaussian_complex(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

fn gaussian_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<C64> {
    (0..len).map(|_| gaussian_complex(rng)).collect()
}

/// Flat mixture weights from independent exponential draws.
fn simplex_weights(rng: &mut ChaCha8Rng, terms: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..terms).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|e| e / total).collect()
}

/// Haar-like random pure state from a normalized Gaussian vector.
pub fn random_pure_state(dims: &[usize], seed: u64) -> Result<DensityMatrix, QuantumError> {
    let total: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = gaussian_vector(&mut rng, total);
    DensityMatrix::from_pure(dims.to_vec(), &amps)
}

/// Random full-rank state `G G^dag / Tr` with a square Gaussian factor.
pub fn random_density_matrix(dims: &[usize], seed: u64) -> Result<DensityMatrix, QuantumError> {
    let total: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Mat64::from_fn(total, total, |_, _| gaussian_complex(&mut rng));
    let w = g.mul(&g.dagger())?;
    let tr = w.trace()?.re;
    DensityMatrix::new(dims.to_vec(), w.scale(r(1.0 / tr)))
}

/// Random fully separable state: a flat-weight mixture of `terms`
/// independent pure product states.
pub fn random_separable_state(
    dims: &[usize],
    terms: usize,
    seed: u64,
) -> Result<DensityMatrix, QuantumError> {
    if terms == 0 {
        return Err(QuantumError::InvalidState(
            "separable mixture needs at least one term".into(),
        ));
    }
    let total: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = simplex_weights(&mut rng, terms);
    let mut mat = Mat64::zeros(total, total);
    for &w in &weights {
        let mut amps = vec![r(1.0)];
        for &d in dims {
            let factor = normalized(gaussian_vector(&mut rng, d));
            let mut next = Vec::with_capacity(amps.len() * d);
            for &a in &amps {
                for &f in &factor {
                    next.push(a * f);
                }
            }
            amps = next;
        }
        accumulate_projector(&mut mat, &amps, w);
    }
    DensityMatrix::new(dims.to_vec(), mat)
}

/// Random state separable across one bipartition: a flat-weight mixture
/// of products of pure states on the `left` subsystems (1-based,
/// ascending, proper nonempty subset) and on the complement.
pub fn random_biseparable_state(
    dims: &[usize],
    left: &[usize],
    terms: usize,
    seed: u64,
) -> Result<DensityMatrix, QuantumError> {
    let n = dims.len();
    if terms == 0 {
        return Err(QuantumError::InvalidState(
            "biseparable mixture needs at least one term".into(),
        ));
    }
    if left.is_empty() || left.len() >= n {
        return Err(QuantumError::InvalidState(format!(
            "left side {left:?} must be a proper nonempty subset of 1..={n}"
        )));
    }
    for w in left.windows(2) {
        if w[0] >= w[1] {
            return Err(QuantumError::InvalidState(format!(
                "left side {left:?} must be strictly ascending"
            )));
        }
    }
    if left[0] < 1 || *left.last().unwrap() > n {
        return Err(QuantumError::InvalidState(format!(
            "left side {left:?} out of range for {n} subsystems"
        )));
    }
    let right: Vec<usize> = (1..=n).filter(|s| !left.contains(s)).collect();
    let left_dim: usize = left.iter().map(|&s| dims[s - 1]).product();
    let right_dim: usize = right.iter().map(|&s| dims[s - 1]).product();
    let left_dims: Vec<usize> = left.iter().map(|&s| dims[s - 1]).collect();
    let right_dims: Vec<usize> = right.iter().map(|&s| dims[s - 1]).collect();

    let total: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights = simplex_weights(&mut rng, terms);
    let mut mat = Mat64::zeros(total, total);
    for &w in &weights {
        let psi_l = normalized(gaussian_vector(&mut rng, left_dim));
        let psi_r = normalized(gaussian_vector(&mut rng, right_dim));
        // Assemble the full amplitude vector by routing each side's
        // digits to its subsystem positions.
        let mut amps = vec![r(0.0); total];
        let full_strides = stride_vec(dims);
        let mut li = 0usize;
        for_each_index(&left_dims, |ld| {
            let mut ri = 0usize;
            for_each_index(&right_dims, |rd| {
                let mut idx = 0usize;
                for (pos, &s) in left.iter().enumerate() {
                    idx += ld[pos] * full_strides[s - 1];
                }
                for (pos, &s) in right.iter().enumerate() {
                    idx += rd[pos] * full_strides[s - 1];
                }
                amps[idx] = psi_l[li] * psi_r[ri];
                ri += 1;
            });
            li += 1;
        });
        accumulate_projector(&mut mat, &amps, w);
    }
    DensityMatrix::new(dims.to_vec(), mat)
}

fn stride_vec(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

fn normalized(mut v: Vec<C64>) -> Vec<C64> {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= Complex::new(norm, 0.0);
    }
    v
}

fn accumulate_projector(mat: &mut Mat64, amps: &[C64], weight: f64) {
    let w = r(weight);
    for i in 0..amps.len() {
        for j in 0..amps.len() {
            let cur = mat.at(i, j);
            mat.set(i, j, cur + w * amps[i] * amps[j].conj());
        }
    }
}
