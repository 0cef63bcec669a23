//! Exact diagonalization in the truncated Fock ⊗ spin basis: the
//! full-physics reference the adiabatic solver is judged against, plus the
//! σx-parity commutator diagnostic.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::numerics::{hermite_table, sym_eigen, EigenDecomposition};
use crate::spectrum::{validate_grid, Method, SpectrumResult, WavefunctionGrid, CONVERGENCE_TOL};

/// Default Fock truncation: the displaced oscillator at Δ ≈ 10, g ≤ 2·g_c
/// holds ~(√2g)²/2 ≈ 17 mean quanta; 250 keeps the ground-energy drift
/// below 1e−10.
pub const DEFAULT_N_FOCK: usize = 250;

/// Truncated Fock ⊗ spin basis with the fixed block layout |n,↑⟩ for
/// n = 0…n_fock−1 followed by |n,↓⟩ — the layout is part of the
/// serialization contract for eigenvector payloads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpinBasis {
    n_fock: usize,
}

impl FockSpinBasis {
    pub fn new(n_fock: usize) -> Result<Self> {
        if n_fock < 2 {
            return Err(Error::InvalidInput(format!(
                "Fock truncation must be ≥ 2, got {n_fock}"
            )));
        }
        Ok(FockSpinBasis { n_fock })
    }

    pub fn n_fock(&self) -> usize {
        self.n_fock
    }

    /// Total matrix dimension 2·n_fock.
    pub fn dim(&self) -> usize {
        2 * self.n_fock
    }

    /// Index of |n,↑⟩.
    pub fn up(&self, n: usize) -> usize {
        n
    }

    /// Index of |n,↓⟩.
    pub fn down(&self, n: usize) -> usize {
        self.n_fock + n
    }
}

/// Raw assembly with unvalidated (possibly negative) η, shared by the public
/// builder and by reflection-equivalence tests.
fn assemble(delta: f64, g: f64, eta: f64, n_fock: usize) -> DMatrix<f64> {
    let dim = 2 * n_fock;
    let mut h = DMatrix::zeros(dim, dim);
    for n in 0..n_fock {
        let up = n;
        let down = n_fock + n;
        h[(up, up)] = n as f64 + eta;
        h[(down, down)] = n as f64 - eta;
        h[(up, down)] = delta / 2.0;
        h[(down, up)] = delta / 2.0;
        if n + 1 < n_fock {
            let c = g * ((n + 1) as f64).sqrt();
            h[(up, up + 1)] = c;
            h[(up + 1, up)] = c;
            h[(down, down + 1)] = -c;
            h[(down + 1, down)] = -c;
        }
    }
    h
}

/// Full Hamiltonian in the σz block basis: up/down diagonals n ± η,
/// within-block tridiagonal ±g·√(n+1), cross-block Δ/2; exactly symmetric
/// by construction.
pub fn build_full_hamiltonian(params: &ModelParams, basis: &FockSpinBasis) -> DMatrix<f64> {
    assemble(params.delta(), params.g(), params.eta(), basis.n_fock)
}

fn ed_eigen(params: &ModelParams, n_fock: usize) -> Result<EigenDecomposition> {
    let basis = FockSpinBasis::new(n_fock)?;
    sym_eigen(&build_full_hamiltonian(params, &basis))
}

/// Lowest k eigenvalues at the given Fock truncation, with the convergence
/// flag from a re-solve at n_fock + 20.
pub fn solve_ed(params: &ModelParams, n_fock: usize, k: usize) -> Result<SpectrumResult> {
    if k < 1 || k > 2 * n_fock {
        return Err(Error::InvalidInput(format!(
            "level count must satisfy 1 ≤ k ≤ 2·n_fock, got k={k}, n_fock={n_fock}"
        )));
    }
    let eig = ed_eigen(params, n_fock)?;
    let enlarged = ed_eigen(params, n_fock + 20)?;
    let delta = (eig.values[0] - enlarged.values[0]).abs();
    Ok(SpectrumResult {
        method: Method::Ed,
        params: *params,
        branch: None,
        basis_size: n_fock,
        energies: eig.values[..k].to_vec(),
        converged: delta < CONVERGENCE_TOL,
        convergence_delta: delta,
    })
}

/// Position-space wavefunction of one level: each spin block's Fock
/// coefficients are summed against the oscillator functions on the grid.
/// Same grid, norm, and sign conventions as
/// [`bo_wavefunction`](crate::bo::bo_wavefunction).
pub fn ed_wavefunction(
    params: &ModelParams,
    n_fock: usize,
    level: usize,
    grid: &[f64],
) -> Result<WavefunctionGrid> {
    if level >= 2 * n_fock {
        return Err(Error::InvalidInput(format!(
            "level {level} out of range for dimension {}",
            2 * n_fock
        )));
    }
    validate_grid(grid, params.g())?;
    let eig = ed_eigen(params, n_fock)?;
    let v = eig.vectors.column(level);
    let psi = hermite_table(n_fock, grid);
    let mut up = Vec::with_capacity(grid.len());
    let mut down = Vec::with_capacity(grid.len());
    for j in 0..grid.len() {
        let mut u = 0.0;
        let mut d = 0.0;
        for n in 0..n_fock {
            u += v[n] * psi[(n, j)];
            d += v[n_fock + n] * psi[(n, j)];
        }
        up.push(u);
        down.push(d);
    }
    crate::bo::fix_sign(&mut up, &mut down);
    Ok(WavefunctionGrid { method: Method::Ed, level, xi: grid.to_vec(), up, down })
}

/// Frobenius norm of [H, P] with the parity operator P = σx·(−1)^{a†a},
/// normalized by ‖H‖_F. Zero (to rounding) exactly when η = 0.
pub fn parity_commutator_norm(params: &ModelParams, n_fock: usize) -> Result<f64> {
    let basis = FockSpinBasis::new(n_fock)?;
    let h = build_full_hamiltonian(params, &basis);
    let p = parity_matrix(&basis);
    let comm = &h * &p - &p * &h;
    Ok(comm.norm() / h.norm())
}

/// P couples |n,↑⟩ ↔ |n,↓⟩ with phase (−1)^n.
pub(crate) fn parity_matrix(basis: &FockSpinBasis) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(basis.dim(), basis.dim());
    for n in 0..basis.n_fock {
        let phase = if n % 2 == 0 { 1.0 } else { -1.0 };
        p[(basis.up(n), basis.down(n))] = phase;
        p[(basis.down(n), basis.up(n))] = phase;
    }
    p
}
