//! Traceless orthogonal operator bases.
//!
//! A basis for dimension d holds d*d matrices: element 0 is the identity
//! and elements 1..d*d are traceless with Hilbert-Schmidt Gram matrix
//! `kappa * I` (elements need not be Hermitian; the Weyl family is not).
//! The declared `kappa` travels with the basis and feeds every bound
//! downstream, so a family whose true normalization deviates from its
//! declared scale is detectable via [`OperatorBasis::validate`].

use sepcrit_core::{C64, Mat64};

use crate::error::QuantumError;

/// Largest supported subsystem dimension.
pub const MAX_DIM: usize = 16;

/// A d-dimensional operator basis with its declared normalization scale.
#[derive(Clone, Debug)]
pub struct OperatorBasis {
    dim: usize,
    kappa: f64,
    family: String,
    elements: Vec<Mat64>,
}

/// Violation report for the basis invariants, plus structural
/// observations (non-Hermitian members) that are legal but worth
/// surfacing for families documented as defective.
#[derive(Clone, Debug)]
pub struct BasisDiagnostics {
    /// Max entry deviation of element 0 from the identity.
    pub identity_deviation: f64,
    /// Max |trace| over elements 1..d*d.
    pub max_trace_abs: f64,
    /// Max deviation of the Gram matrix from `kappa * delta_ij` over
    /// elements 1..d*d.
    pub max_gram_deviation: f64,
    /// Element pair (i, j) realizing the worst Gram deviation, with the
    /// offending inner product value.
    pub worst_gram_pair: Option<(usize, usize, C64)>,
    /// Whether the declared scale satisfies `kappa >= 1`.
    pub kappa_ok: bool,
    /// Indices of elements that are not Hermitian (informational; valid
    /// for non-Hermitian families such as Weyl).
    pub non_hermitian: Vec<usize>,
}

impl BasisDiagnostics {
    /// True when every invariant holds at its reference tolerance.
    pub fn passes(&self) -> bool {
        self.identity_deviation <= 1e-12
            && self.max_trace_abs <= 1e-12
            && self.max_gram_deviation < 1e-10
            && self.kappa_ok
    }
}

impl OperatorBasis {
    fn new(dim: usize, kappa: f64, family: impl Into<String>, elements: Vec<Mat64>) -> Self {
        debug_assert_eq!(elements.len(), dim * dim);
        OperatorBasis {
            dim,
            kappa,
            family: family.into(),
            elements,
        }
    }

    /// Subsystem dimension d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Declared normalization scale.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Family label, e.g. `"gellmann"` or `"pauli-product"`.
    pub fn family(&self) -> &str {
        &self.family
    }

    /// Number of elements (always d*d).
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// True only for an empty element list (never for a built basis).
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Basis element by index; 0 is the identity.
    pub fn element(&self, i: usize) -> &Mat64 {
        &self.elements[i]
    }

    /// All elements, identity first.
    pub fn elements(&self) -> &[Mat64] {
        &self.elements
    }

    /// Measures every invariant and reports the worst violations.
    pub fn validate(&self) -> BasisDiagnostics {
        let d = self.dim;
        let id = Mat64::identity(d);
        let identity_deviation = self.elements[0].max_abs_diff(&id).unwrap_or(f64::INFINITY);

        let mut max_trace_abs = 0.0f64;
        for g in &self.elements[1..] {
            let t = g.trace().map(|z| z.norm()).unwrap_or(f64::INFINITY);
            max_trace_abs = max_trace_abs.max(t);
        }

        let mut max_gram_deviation = 0.0f64;
        let mut worst_gram_pair = None;
        for i in 1..self.elements.len() {
            for j in 1..self.elements.len() {
                let ip = self.elements[i]
                    .hs_inner(&self.elements[j])
                    .unwrap_or(C64::new(f64::INFINITY, 0.0));
                let target = if i == j { self.kappa } else { 0.0 };
                let err = (ip - C64::new(target, 0.0)).norm();
                if err > max_gram_deviation {
                    max_gram_deviation = err;
                    worst_gram_pair = Some((i, j, ip));
                }
            }
        }

        let non_hermitian = self
            .elements
            .iter()
            .enumerate()
            .filter(|(_, g)| g.hermitian_deviation().map_or(true, |d| d > 1e-12))
            .map(|(i, _)| i)
            .collect();

        BasisDiagnostics {
            identity_deviation,
            max_trace_abs,
            max_gram_deviation,
            worst_gram_pair,
            kappa_ok: self.kappa >= 1.0,
            non_hermitian,
        }
    }
}

fn check_dim(d: usize) -> Result<(), QuantumError> {
    if d < 2 {
        return Err(QuantumError::InvalidBasis(format!(
            "dimension must be at least 2, got {d}"
        )));
    }
    if d > MAX_DIM {
        return Err(QuantumError::Unsupported(format!(
            "dimension {d} exceeds the supported maximum {MAX_DIM}"
        )));
    }
    Ok(())
}

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn mat(rows: &[&[C64]]) -> Mat64 {
    Mat64::from_rows(rows.iter().map(|row| row.to_vec()).collect()).expect("rectangular literal")
}

fn real_mat(rows: &[&[f64]]) -> Mat64 {
    Mat64::from_rows(
        rows.iter()
            .map(|row| row.iter().map(|&x| r(x)).collect())
            .collect(),
    )
    .expect("rectangular literal")
}

fn diag(entries: &[C64]) -> Mat64 {
    let d = entries.len();
    let mut m = Mat64::zeros(d, d);
    for (i, &z) in entries.iter().enumerate() {
        m.set(i, i, z);
    }
    m
}

/// The single-qubit basis: identity plus the three spin matrices,
/// normalization scale 2.
pub fn pauli_basis() -> OperatorBasis {
    let i = C64::new(0.0, 1.0);
    let elements = vec![
        Mat64::identity(2),
        real_mat(&[&[0.0, 1.0], &[1.0, 0.0]]),
        mat(&[&[r(0.0), -i], &[i, r(0.0)]]),
        real_mat(&[&[1.0, 0.0], &[0.0, -1.0]]),
    ];
    OperatorBasis::new(2, 2.0, "pauli", elements)
}

/// n-fold tensor products of the single-qubit basis in row-major index
/// order (element 0 is the identity), covering dimension 2^n.
///
/// The declared scale stays at 2 for every n, matching the convention
/// under which multi-qubit blocks are treated downstream, even though
/// the true Gram normalization of the products is 2^n. `validate`
/// reports the mismatch for n >= 2 by design.
pub fn pauli_product_basis(n: usize) -> Result<OperatorBasis, QuantumError> {
    if n == 0 {
        return Err(QuantumError::InvalidBasis(
            "pauli product basis needs at least one factor".into(),
        ));
    }
    let d = 1usize << n;
    check_dim(d)?;
    let single = pauli_basis();
    let mut elements: Vec<Mat64> = single.elements().to_vec();
    for _ in 1..n {
        let mut next = Vec::with_capacity(elements.len() * 4);
        for a in &elements {
            for b in single.elements() {
                next.push(a.kron(b));
            }
        }
        elements = next;
    }
    Ok(OperatorBasis::new(d, 2.0, "pauli-product", elements))
}

/// Generalized Gell-Mann basis for dimension d, scale 2: identity, then
/// symmetric pairs (lexicographic), antisymmetric pairs, then diagonal
/// elements l = 1..d-1.
pub fn gell_mann_basis(d: usize) -> Result<OperatorBasis, QuantumError> {
    check_dim(d)?;
    let i = C64::new(0.0, 1.0);
    let mut sym = Vec::new();
    let mut anti = Vec::new();
    for j in 0..d {
        for k in (j + 1)..d {
            let mut s = Mat64::zeros(d, d);
            s.set(j, k, r(1.0));
            s.set(k, j, r(1.0));
            sym.push(s);
            let mut a = Mat64::zeros(d, d);
            a.set(j, k, -i);
            a.set(k, j, i);
            anti.push(a);
        }
    }
    let mut diags = Vec::new();
    for l in 1..d {
        let scale = (2.0 / (l as f64 * (l as f64 + 1.0))).sqrt();
        let mut entries = vec![r(0.0); d];
        for e in entries.iter_mut().take(l) {
            *e = r(scale);
        }
        entries[l] = r(-(l as f64) * scale);
        diags.push(diag(&entries));
    }
    let mut elements = vec![Mat64::identity(d)];
    elements.extend(sym);
    elements.extend(anti);
    elements.extend(diags);
    Ok(OperatorBasis::new(d, 2.0, "gellmann", elements))
}

/// Canonical orthonormal traceless basis: the Gell-Mann elements scaled
/// by 1/sqrt(2), scale 1.
pub fn canonical_basis(d: usize) -> Result<OperatorBasis, QuantumError> {
    let gm = gell_mann_basis(d)?;
    let s = r(1.0 / 2.0f64.sqrt());
    let mut elements = vec![gm.elements()[0].clone()];
    for g in &gm.elements()[1..] {
        elements.push(g.scale(s));
    }
    Ok(OperatorBasis::new(d, 1.0, "canonical", elements))
}

/// Weyl operator basis for dimension d, scale d: element n*d + m is
/// `W(n, m)` with `W[k, (k+m) mod d] = omega^(k*n)`, omega = e^(2 pi i/d).
/// Non-Hermitian for d > 2 is expected and valid.
pub fn weyl_basis(d: usize) -> Result<OperatorBasis, QuantumError> {
    check_dim(d)?;
    let mut elements = Vec::with_capacity(d * d);
    for n in 0..d {
        for m in 0..d {
            let mut w = Mat64::zeros(d, d);
            for k in 0..d {
                let phase = 2.0 * std::f64::consts::PI * (k * n) as f64 / d as f64;
                w.set(k, (k + m) % d, C64::from_polar(1.0, phase));
            }
            elements.push(w);
        }
    }
    Ok(OperatorBasis::new(d, d as f64, "weyl", elements))
}

/// Hermitian Heisenberg-Weyl basis, available for d in {2, 3, 4} only.
///
/// d=2 coincides with the Pauli basis. The d=3 and d=4 element matrices
/// are fixed published reference sets transcribed verbatim (chi =
/// (1+i)/2); the d=4 set carries known transcription defects - elements
/// 5, 7, 14 are not Hermitian and the Gram condition fails around
/// elements 5-7 and 14 - which `validate` surfaces rather than repairs.
pub fn heisenberg_weyl_basis(d: usize) -> Result<OperatorBasis, QuantumError> {
    let c = C64::new(0.5, 0.5);
    let cs = c.conj();
    match d {
        2 => {
            let p = pauli_basis();
            Ok(OperatorBasis::new(2, 2.0, "heisenberg-weyl", p.elements().to_vec()))
        }
        3 => {
            let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
            let ws = w.conj();
            let z = r(0.0);
            let elements = vec![
                Mat64::identity(3),
                mat(&[&[z, cs, c], &[c, z, cs], &[cs, c, z]]),
                mat(&[&[z, c, cs], &[cs, z, c], &[c, cs, z]]),
                diag(&[c + cs, c * w + cs * ws, c * ws + cs * w]),
                mat(&[&[z, -cs * w, -c * w], &[-c * ws, z, -cs], &[-cs * ws, -c, z]]),
                mat(&[&[z, c * ws, cs * ws], &[cs * w, z, c], &[c * w, cs, z]]),
                diag(&[c + cs, c * ws + cs * w, c * w + cs * ws]),
                mat(&[&[z, cs * ws, c * ws], &[c * w, z, cs], &[cs * w, c, z]]),
                mat(&[&[z, c * w, cs * w], &[cs * ws, z, c], &[c * ws, cs, z]]),
            ];
            Ok(OperatorBasis::new(3, 3.0, "heisenberg-weyl", elements))
        }
        4 => {
            let i = C64::new(0.0, 1.0);
            let z = r(0.0);
            let o = r(1.0);
            let s = r(1.0 / 2.0f64.sqrt());
            let scale = |m: Mat64| m.scale(s);
            let elements = vec![
                Mat64::identity(4),
                mat(&[&[z, cs, z, c], &[c, z, cs, z], &[z, c, z, cs], &[cs, z, c, z]]),
                real_mat(&[
                    &[0.0, 0.0, 1.0, 0.0],
                    &[0.0, 0.0, 0.0, 1.0],
                    &[1.0, 0.0, 0.0, 0.0],
                    &[0.0, 1.0, 0.0, 0.0],
                ]),
                mat(&[&[z, c, z, cs], &[cs, z, c, z], &[z, cs, z, c], &[c, z, cs, z]]),
                diag(&[o, -o, -o, o]),
                mat(&[&[z, -i, z, z], &[i, z, -o, z], &[z, -o, z, i], &[o, z, -i, z]]),
                mat(&[&[z, z, -i, z], &[z, z, z, i], &[i, z, z, z], &[z, -i, z, z]]),
                scale(mat(&[
                    &[z, -i, z, -o],
                    &[i, z, -o, z],
                    &[z, -o, z, i],
                    &[o, z, -i, z],
                ])),
                diag(&[o, -o, o, -o]),
                mat(&[&[z, -c, z, cs], &[-cs, z, c, z], &[z, cs, z, -c], &[c, z, -cs, z]]),
                real_mat(&[
                    &[0.0, 0.0, -1.0, 0.0],
                    &[0.0, 0.0, 0.0, 1.0],
                    &[-1.0, 0.0, 0.0, 0.0],
                    &[0.0, 1.0, 0.0, 0.0],
                ]),
                mat(&[&[z, -cs, z, c], &[-c, z, cs, z], &[z, c, z, -cs], &[cs, z, -c, z]]),
                diag(&[o, o, -o, -o]),
                scale(mat(&[
                    &[z, -o, z, -i],
                    &[-o, z, -i, z],
                    &[z, i, z, o],
                    &[i, z, o, z],
                ])),
                mat(&[&[z, z, i, z], &[z, z, z, i], &[-i, z, z, z], &[z, i, z, z]]),
                scale(mat(&[
                    &[z, o, z, -i],
                    &[o, z, -i, z],
                    &[z, i, z, -o],
                    &[i, z, -o, z],
                ])),
            ];
            Ok(OperatorBasis::new(4, 4.0, "heisenberg-weyl", elements))
        }
        _ => Err(QuantumError::Unsupported(format!(
            "hermitian heisenberg-weyl basis is only available for d in {{2, 3, 4}}, got {d}"
        ))),
    }
}
