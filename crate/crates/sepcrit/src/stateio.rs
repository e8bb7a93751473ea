//! Density-matrix file IO: a diffable JSON form and a packed binary
//! form for large states, sharing one loader that sniffs the format.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use sepcrit_core::Mat;
use sepcrit_quantum::DensityMatrix;

use crate::config::{CliError, SCHEMA_VERSION};

/// Magic prefix identifying the packed binary format.
pub const PACKED_MAGIC: &[u8; 4] = b"SEPC";
const PACKED_VERSION: u32 = 1;

/// JSON state file: row-major real and imaginary parts.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFileJson {
    #[serde(default)]
    schema_version: Option<String>,
    dims: Vec<usize>,
    re: Vec<f64>,
    im: Vec<f64>,
}

/// Loads a density matrix from either format, validating it fully
/// (shape, hermiticity, unit trace, positivity).
pub fn load_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let (dims, entries) = if bytes.starts_with(PACKED_MAGIC) {
        parse_packed(&bytes).map_err(|e| {
            CliError::config(format!("invalid packed state file {}: {e}", path.display()))
        })?
    } else {
        parse_json(&bytes).map_err(|e| {
            CliError::config(format!("invalid state file {}: {e}", path.display()))
        })?
    };
    let total: usize = dims.iter().product();
    let mat = Mat::from_fn(total, total, |r, c| entries[r * total + c]);
    Ok(DensityMatrix::new(dims, mat)?)
}

fn parse_json(bytes: &[u8]) -> Result<(Vec<usize>, Vec<Complex<f64>>), String> {
    // serde_json diagnostics carry line and column positions.
    let file: StateFileJson = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    if let Some(v) = &file.schema_version {
        if v != SCHEMA_VERSION {
            return Err(format!("unsupported schema_version '{v}'"));
        }
    }
    check_dims(&file.dims)?;
    let total: usize = file.dims.iter().product();
    let want = total * total;
    if file.re.len() != want || file.im.len() != want {
        return Err(format!(
            "dims {:?} need {} entries, got re: {}, im: {}",
            file.dims,
            want,
            file.re.len(),
            file.im.len()
        ));
    }
    let entries = file
        .re
        .iter()
        .zip(&file.im)
        .map(|(&re, &im)| Complex::new(re, im))
        .collect();
    Ok((file.dims, entries))
}

fn parse_packed(bytes: &[u8]) -> Result<(Vec<usize>, Vec<Complex<f64>>), String> {
    let mut off = PACKED_MAGIC.len();
    let mut take_u32 = |bytes: &[u8]| -> Result<u32, String> {
        let end = off + 4;
        let chunk = bytes
            .get(off..end)
            .ok_or_else(|| format!("truncated header at byte {off}"))?;
        off = end;
        Ok(u32::from_le_bytes(chunk.try_into().unwrap()))
    };
    let version = take_u32(bytes)?;
    if version != PACKED_VERSION {
        return Err(format!("unsupported packed version {version}"));
    }
    let ndim = take_u32(bytes)? as usize;
    if ndim == 0 || ndim > 16 {
        return Err(format!("implausible subsystem count {ndim}"));
    }
    let mut dims = Vec::with_capacity(ndim);
    for _ in 0..ndim {
        dims.push(take_u32(bytes)? as usize);
    }
    check_dims(&dims)?;
    let total: usize = dims.iter().product();
    let want = total * total;
    let data = &bytes[off..];
    if data.len() != want * 16 {
        return Err(format!(
            "dims {dims:?} need {} data bytes, got {}",
            want * 16,
            data.len()
        ));
    }
    let entries = data
        .chunks_exact(16)
        .map(|chunk| {
            Complex::new(
                f64::from_le_bytes(chunk[..8].try_into().unwrap()),
                f64::from_le_bytes(chunk[8..].try_into().unwrap()),
            )
        })
        .collect();
    Ok((dims, entries))
}

fn check_dims(dims: &[usize]) -> Result<(), String> {
    if dims.is_empty() {
        return Err("dims must be non-empty".into());
    }
    if dims.iter().any(|&d| d < 2) {
        return Err(format!("subsystem dimensions must be at least 2, got {dims:?}"));
    }
    let total: usize = dims.iter().product();
    if total > 4096 {
        return Err(format!("total dimension {total} exceeds the supported 4096"));
    }
    Ok(())
}

/// Serializes a state in the JSON file format.
pub fn state_json_bytes(rho: &DensityMatrix) -> Vec<u8> {
    let total = rho.total_dim();
    let mut re = Vec::with_capacity(total * total);
    let mut im = Vec::with_capacity(total * total);
    for r in 0..total {
        for c in 0..total {
            let z = rho.matrix().at(r, c);
            re.push(z.re);
            im.push(z.im);
        }
    }
    let file = StateFileJson {
        schema_version: Some(SCHEMA_VERSION.to_string()),
        dims: rho.dims().to_vec(),
        re,
        im,
    };
    let mut bytes = serde_json::to_vec_pretty(&file).expect("state serialization");
    bytes.push(b'\n');
    bytes
}

/// Serializes a state as an entry-per-row CSV (dump only; the loadable
/// formats are JSON and packed).
pub fn state_csv_bytes(rho: &DensityMatrix) -> Vec<u8> {
    use std::fmt::Write as _;

    let total = rho.total_dim();
    let mut csv = String::from("row,col,re,im\n");
    for r in 0..total {
        for c in 0..total {
            let z = rho.matrix().at(r, c);
            writeln!(csv, "{r},{c},{},{}", z.re, z.im).unwrap();
        }
    }
    csv.into_bytes()
}

/// Serializes a state in the packed binary format.
pub fn state_packed_bytes(rho: &DensityMatrix) -> Vec<u8> {
    let dims = rho.dims();
    let total = rho.total_dim();
    let mut bytes = Vec::with_capacity(16 + dims.len() * 4 + total * total * 16);
    bytes.extend_from_slice(PACKED_MAGIC);
    bytes.extend_from_slice(&PACKED_VERSION.to_le_bytes());
    bytes.extend_from_slice(&(dims.len() as u32).to_le_bytes());
    for &d in dims {
        bytes.extend_from_slice(&(d as u32).to_le_bytes());
    }
    for r in 0..total {
        for c in 0..total {
            let z = rho.matrix().at(r, c);
            bytes.extend_from_slice(&z.re.to_le_bytes());
            bytes.extend_from_slice(&z.im.to_le_bytes());
        }
    }
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;
    use sepcrit_quantum::bennett_state;
    use std::io::Write;

    fn temp_file(bytes: &[u8]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(bytes).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn json_round_trip() {
        let rho = bennett_state();
        let f = temp_file(&state_json_bytes(&rho));
        let back = load_state(f.path()).unwrap();
        assert_eq!(back.dims(), rho.dims());
        assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn packed_round_trip() {
        let rho = bennett_state();
        let f = temp_file(&state_packed_bytes(&rho));
        let back = load_state(f.path()).unwrap();
        assert_eq!(back.dims(), rho.dims());
        assert!(back.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn malformed_json_reports_position() {
        let f = temp_file(b"{\"dims\": [2,2], \"re\": [1,2\n");
        let err = load_state(f.path()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line") && msg.contains("column"), "{msg}");
        assert_eq!(err.code(), 2);
    }

    #[test]
    fn non_state_matrices_are_rejected() {
        let bad = StateFileJson {
            schema_version: Some(SCHEMA_VERSION.into()),
            dims: vec![2],
            re: vec![0.9, 0.5, 0.5, 0.1],
            im: vec![0.0; 4],
        };
        let mut bytes = serde_json::to_vec(&bad).unwrap();
        bytes.push(b'\n');
        let f = temp_file(&bytes);
        // Hermitian, unit trace, but not positive semidefinite.
        let err = load_state(f.path()).unwrap_err();
        assert_eq!(err.code(), 2);
    }

    #[test]
    fn truncated_packed_is_rejected() {
        let rho = bennett_state();
        let mut bytes = state_packed_bytes(&rho);
        bytes.truncate(bytes.len() - 8);
        let f = temp_file(&bytes);
        let err = load_state(f.path()).unwrap_err();
        assert!(err.to_string().contains("data bytes"), "{err}");
    }
}
