//! Result types shared by the two solvers: spectra with convergence
//! metadata and position-space wavefunctions on a grid.

use serde::{Deserialize, Serialize};

use crate::model::{Branch, ModelParams};

/// Ground-energy change below which a basis-enlargement re-solve counts as
/// converged.
pub const CONVERGENCE_TOL: f64 = 1e-8;

/// Which solver produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Adiabatic (Born–Oppenheimer) solver on one spin branch.
    Bo,
    /// Exact diagonalization in the truncated Fock ⊗ spin basis.
    Ed,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Bo => "bo",
            Method::Ed => "ed",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Lowest-k spectrum from one solver.
///
/// Energies are raw eigenvalues in units of ħω, ascending. Each solver keeps
/// its native zero-point convention: the adiabatic solver's oscillator term
/// is −∂²/2 + ξ²/2 (carries the +½), exact diagonalization counts quanta
/// with a†a (does not); the two conventions differ by exactly ½ and are
/// aligned only in [`compare_methods`](crate::scan::compare_methods).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub method: Method,
    pub params: ModelParams,
    /// Adiabatic branch; `None` for exact diagonalization.
    pub branch: Option<Branch>,
    /// Oscillator basis size N (BO) or Fock truncation n_fock (ED).
    pub basis_size: usize,
    /// Ascending eigenenergies (ħω).
    pub energies: Vec<f64>,
    /// True when `convergence_delta` < [`CONVERGENCE_TOL`].
    pub converged: bool,
    /// |ground-energy change| for basis size → basis size + 20.
    pub convergence_delta: f64,
}

/// Spin-resolved wavefunction sampled on an ascending ξ grid.
///
/// Conventions: the sample of largest magnitude (over both components) is
/// positive; on a grid that covers both wells with tails, the trapezoid-rule
/// norm ∫(up² + down²)dξ is 1 within 1e−6.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionGrid {
    pub method: Method,
    pub level: usize,
    pub xi: Vec<f64>,
    pub up: Vec<f64>,
    pub down: Vec<f64>,
}

impl WavefunctionGrid {
    /// Position density up² + down² per grid point.
    pub fn density(&self) -> Vec<f64> {
        self.up
            .iter()
            .zip(&self.down)
            .map(|(u, d)| u * u + d * d)
            .collect()
    }

    /// Trapezoid-rule value of ∫(up² + down²) dξ over the grid.
    pub fn trapezoid_norm(&self) -> f64 {
        let rho = self.density();
        let mut acc = 0.0;
        for i in 1..self.xi.len() {
            acc += 0.5 * (rho[i] + rho[i - 1]) * (self.xi[i] - self.xi[i - 1]);
        }
        acc
    }
}

/// Shared validation for wavefunction grids: finite, strictly ascending, and
/// spanning ±(√2·g·1.5 + 6) so both wells and their tails are covered.
pub(crate) fn validate_grid(grid: &[f64], g: f64) -> crate::error::Result<()> {
    use crate::error::Error;
    if grid.len() < 2 {
        return Err(Error::InvalidInput("grid needs at least 2 points".into()));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("grid contains non-finite points".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("grid must be strictly ascending".into()));
    }
    let span = std::f64::consts::SQRT_2 * g * 1.5 + 6.0;
    if grid[0] > -span || grid[grid.len() - 1] < span {
        return Err(Error::InvalidInput(format!(
            "grid [{}, {}] must span at least [-{span}, {span}] to hold the wavefunction support",
            grid[0],
            grid[grid.len() - 1]
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_labels() {
        assert_eq!(Method::Bo.to_string(), "bo");
        assert_eq!(Method::Ed.to_string(), "ed");
        assert_eq!(serde_json::to_string(&Method::Ed).unwrap(), "\"ed\"");
    }

    #[test]
    fn trapezoid_norm_of_flat_density() {
        let w = WavefunctionGrid {
            method: Method::Bo,
            level: 0,
            xi: vec![0.0, 1.0, 2.0, 4.0],
            up: vec![1.0; 4],
            down: vec![0.0; 4],
        };
        assert_eq!(w.trapezoid_norm(), 4.0);
        assert_eq!(w.density(), vec![1.0; 4]);
    }

    #[test]
    fn grid_validation() {
        let ok: Vec<f64> = (0..=200).map(|i| -10.0 + 0.1 * i as f64).collect();
        assert!(validate_grid(&ok, 1.0).is_ok());
        assert!(validate_grid(&ok, 10.0).is_err()); // too narrow for this g
        assert!(validate_grid(&[0.0], 0.0).is_err());
        assert!(validate_grid(&[-10.0, -10.0, 10.0], 0.0).is_err());
        assert!(validate_grid(&[-10.0, f64::NAN, 10.0], 0.0).is_err());
    }
}
