//! Fine full-rank reference solutions, cached on disk by content hash.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::harness::ExperimentConfig;
use crate::io::write_atomic;
use crate::linalg::DenseMatrix;
use crate::model::{sample_initial, Preset};
use crate::splitting::{integrate_fullrank, SplittingSetup};

const MAGIC: &[u8; 8] = b"DLRWREF1";

fn bits(v: f64) -> String {
    format!("{:016x}", v.to_bits())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Hash of everything the reference depends on. `None` for custom presets
/// and custom nonlinearities, whose closures cannot be hashed.
pub fn cache_key(config: &ExperimentConfig) -> Option<String> {
    if matches!(config.preset, Preset::Custom { .. }) || config.nonlinear.f.is_custom() || config.nonlinear.g.is_custom() {
        return None;
    }
    let g = &config.grid;
    let p = &config.params;
    let canonical = json!({
        "preset": config.preset.name(),
        "grid": { "bounds": g.bounds().map(bits), "nx": g.nx, "ny": g.ny },
        "params": {
            "alpha": bits(p.alpha),
            "beta": bits(p.beta),
            "gamma": bits(p.gamma),
            "delta": bits(p.delta),
            "omega": p.omega.map(bits),
        },
        "nonlinear": { "f": config.nonlinear.f.name(), "g": config.nonlinear.g.name() },
        "T": bits(config.t_final),
        "M_ref": config.reference_steps(),
        "multiplier": config.reference_multiplier,
        "fn_substeps": config.fn_substeps,
    });
    Some(hex(&Sha256::digest(canonical.to_string().as_bytes())))
}

pub fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.ref"))
}

/// The `P` component of a full-rank run with `reference_steps()` steps.
///
/// With a cache directory the result is looked up first and stored after a
/// fresh computation. Unreadable or corrupt entries are recomputed.
pub fn reference_solution(config: &ExperimentConfig, cache_dir: Option<&Path>) -> Result<DenseMatrix> {
    let path = cache_dir.zip(cache_key(config)).map(|(d, k)| cache_path(d, &k));
    if let Some(m) = path.as_deref().and_then(|p| fs::read(p).ok()).and_then(|b| decode(&b)) {
        return Ok(m);
    }
    let m = compute_reference(config)?;
    if let Some(p) = path {
        crate::io::create_dir_all(p.parent().unwrap_or(Path::new(".")))?;
        write_atomic(&p, &encode(&m))?;
    }
    Ok(m)
}

pub fn compute_reference(config: &ExperimentConfig) -> Result<DenseMatrix> {
    let mut setup = SplittingSetup::new(config.grid, config.params, config.nonlinear.clone());
    setup.fn_substeps = config.fn_substeps;
    let state0 = sample_initial(&config.grid, &config.preset);
    let time = config.time_grid(config.reference_steps())?;
    Ok(integrate_fullrank(&state0, &setup, &time, |_, _, _| {})?.p)
}

/// Magic, dimensions, little-endian data, SHA-256 of everything before it.
pub fn encode(m: &DenseMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(24 + 8 * m.as_slice().len() + 32);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(m.rows() as u64).to_le_bytes());
    out.extend_from_slice(&(m.cols() as u64).to_le_bytes());
    for v in m.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    let digest = Sha256::digest(&out);
    out.extend_from_slice(&digest);
    out
}

pub fn decode(bytes: &[u8]) -> Option<DenseMatrix> {
    if bytes.len() < 24 + 32 || &bytes[..8] != MAGIC {
        return None;
    }
    let (body, digest) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return None;
    }
    let word = |i: usize| u64::from_le_bytes(body[i..i + 8].try_into().unwrap()) as usize;
    let (rows, cols) = (word(8), word(16));
    if rows.checked_mul(cols)?.checked_mul(8)? != body.len() - 24 {
        return None;
    }
    let data = body[24..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    DenseMatrix::new(rows, cols, data).ok()
}
