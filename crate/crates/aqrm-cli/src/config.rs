//! Solver-size and threshold configuration with the precedence
//! flag > config file > built-in default.
//!
//! The config file is a flat `key = value` list (a TOML subset); unknown
//! keys are rejected so typos surface instead of silently falling back to
//! defaults.

use std::path::Path;

use aqrm::numerics::QUAD_ORDER_MAX;
use aqrm::scan::DEFAULT_GAP_THRESHOLD;
use aqrm::{Error, Result, DEFAULT_BASIS, DEFAULT_N_FOCK};
use serde::Deserialize;

/// Values read from a `--config` file; every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// Oscillator basis size for the adiabatic solver.
    pub basis: Option<usize>,
    /// Fock truncation for exact diagonalization.
    pub fock: Option<usize>,
    /// Fixed Gauss–Hermite order for single-point adiabatic solves.
    pub quad: Option<usize>,
    /// Gap threshold for degeneracy classification.
    pub threshold: Option<f64>,
}

impl FileConfig {
    /// Parses a `key = value` config file, rejecting unknown keys.
    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidInput(format!("cannot read config {}: {e}", path.display()))
        })?;
        toml::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("config {}: {e}", path.display())))
    }
}

/// Effective solver sizes after precedence resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved {
    pub basis: usize,
    pub fock: usize,
    /// `None` keeps the solver's automatic order pairing.
    pub quad: Option<usize>,
    pub threshold: f64,
}

/// Applies flag > config > built-in default per field. `quad` has no
/// built-in default (automatic pairing).
pub fn resolve(
    flag_basis: Option<usize>,
    flag_fock: Option<usize>,
    flag_quad: Option<usize>,
    flag_threshold: Option<f64>,
    file: &FileConfig,
) -> Resolved {
    Resolved {
        basis: flag_basis.or(file.basis).unwrap_or(DEFAULT_BASIS),
        fock: flag_fock.or(file.fock).unwrap_or(DEFAULT_N_FOCK),
        quad: flag_quad.or(file.quad),
        threshold: flag_threshold.or(file.threshold).unwrap_or(DEFAULT_GAP_THRESHOLD),
    }
}

/// Cheap bounds checks on resolved overrides so a bad value is rejected
/// before any solve starts; the solvers re-validate their own ceilings.
pub fn validate(r: &Resolved) -> Result<()> {
    if r.basis < 2 {
        return Err(Error::InvalidInput(format!("basis must be ≥ 2, got {}", r.basis)));
    }
    if r.fock < 2 {
        return Err(Error::InvalidInput(format!("fock must be ≥ 2, got {}", r.fock)));
    }
    if !r.threshold.is_finite() || r.threshold <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "threshold must be finite and > 0, got {}",
            r.threshold
        )));
    }
    if let Some(q) = r.quad {
        if q < r.basis + 20 || q > QUAD_ORDER_MAX {
            return Err(Error::InvalidInput(format!(
                "quad must lie in [basis + 20, {QUAD_ORDER_MAX}] = [{}, {QUAD_ORDER_MAX}], got {q}",
                r.basis + 20
            )));
        }
    }
    Ok(())
}
