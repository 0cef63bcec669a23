//! Adiabatic (Born–Oppenheimer) solver: after the spin sector is
//! diagonalized analytically, the scalar problem −∂²/2 + ξ²/2 + ε(ξ) on one
//! branch is diagonalized in the harmonic-oscillator basis.
//!
//! The inter-branch coupling generated by ∂_ξ acting on the ξ-dependent spin
//! eigenvectors is neglected, and no diagonal correction is added; the exact
//! solver in [`crate::ed`] quantifies the omission empirically.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::{epsilon, spin_eigenvector, Branch, ModelParams};
use crate::numerics::{gauss_hermite, hermite_table, sym_eigen, EigenDecomposition};
use crate::spectrum::{validate_grid, Method, SpectrumResult, WavefunctionGrid, CONVERGENCE_TOL};

/// Default oscillator basis size: for Δ ≈ 10 and g up to 2·g_c the
/// displaced-well support needs ~(√2g)²/2 ≈ 17 mean quanta plus tunneling
/// tails; 120 keeps the ground-energy drift under 1e−8.
pub const DEFAULT_BASIS: usize = 120;

/// Quadrature order paired with basis size N: degree-exact for the
/// polynomial part of ψ_n ψ_m (2N − 2) with margin for the smooth ε factor.
fn quad_order(n: usize) -> usize {
    (2 * n + 32).max(128)
}

/// N×N matrix (n + ½)·δ_{nm} + ⟨n|ε_branch|m⟩ in the oscillator basis,
/// exactly symmetrized.
///
/// Supported up to N = 1008 (the paired quadrature order hits its ceiling
/// there; the error says so).
pub fn build_bo_hamiltonian(
    params: &ModelParams,
    branch: Branch,
    n: usize,
) -> Result<DMatrix<f64>> {
    build_with_order(params, branch, n, quad_order(n))
}

pub(crate) fn build_with_order(
    params: &ModelParams,
    branch: Branch,
    n: usize,
    order: usize,
) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("basis size must be ≥ 2, got {n}")));
    }
    let rule = gauss_hermite(order)?;
    let psi = hermite_table(n, &rule.nodes);
    let wtf: Vec<f64> = rule
        .nodes
        .iter()
        .zip(&rule.log_weights)
        .map(|(&x, &lw)| (lw + x * x).exp() * epsilon(params, branch, x))
        .collect();
    let mut scaled = psi.clone();
    for (j, &w) in wtf.iter().enumerate() {
        scaled.column_mut(j).scale_mut(w);
    }
    let h = &scaled * psi.transpose();
    let mut h = (&h + h.transpose()) * 0.5;
    for i in 0..n {
        h[(i, i)] += i as f64 + 0.5;
    }
    Ok(h)
}

fn bo_eigen(params: &ModelParams, branch: Branch, n: usize) -> Result<EigenDecomposition> {
    sym_eigen(&build_bo_hamiltonian(params, branch, n)?)
}

/// Lowest k eigenvalues on the chosen branch at basis size N, with the
/// convergence flag from a re-solve at N + 20.
pub fn solve_bo(
    params: &ModelParams,
    branch: Branch,
    n: usize,
    k: usize,
) -> Result<SpectrumResult> {
    solve_impl(params, branch, n, k, None)
}

/// [`solve_bo`] with a caller-fixed quadrature order instead of the
/// automatic pairing. Both the primary and the enlarged (N + 20) solve use
/// `order`, so it must cover the enlarged basis: order ≥ N + 20.
pub fn solve_bo_with_order(
    params: &ModelParams,
    branch: Branch,
    n: usize,
    order: usize,
    k: usize,
) -> Result<SpectrumResult> {
    if order < n + 20 {
        return Err(Error::InvalidInput(format!(
            "quadrature order must cover the convergence re-solve: order ≥ N + 20, \
             got order={order}, N={n}"
        )));
    }
    solve_impl(params, branch, n, k, Some(order))
}

fn solve_impl(
    params: &ModelParams,
    branch: Branch,
    n: usize,
    k: usize,
    order: Option<usize>,
) -> Result<SpectrumResult> {
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!(
            "level count must satisfy 1 ≤ k ≤ N, got k={k}, N={n}"
        )));
    }
    let q = |m: usize| order.unwrap_or_else(|| quad_order(m));
    let eig = sym_eigen(&build_with_order(params, branch, n, q(n))?)?;
    let enlarged = sym_eigen(&build_with_order(params, branch, n + 20, q(n + 20))?)?;
    let delta = (eig.values[0] - enlarged.values[0]).abs();
    Ok(SpectrumResult {
        method: Method::Bo,
        params: *params,
        branch: Some(branch),
        basis_size: n,
        energies: eig.values[..k].to_vec(),
        converged: delta < CONVERGENCE_TOL,
        convergence_delta: delta,
    })
}

/// Position-space wavefunction of one level: the spin eigenvector envelope
/// times the oscillator-basis expansion of the scalar eigenvector,
/// Ψ_σ(ξ) = φ_branch,σ(ξ)·Σ_n a_n ψ_n(ξ).
///
/// The grid must be strictly ascending and span ±(√2·g·1.5 + 6); the sign is
/// fixed by making the largest-magnitude sample positive.
pub fn bo_wavefunction(
    params: &ModelParams,
    branch: Branch,
    n: usize,
    level: usize,
    grid: &[f64],
) -> Result<WavefunctionGrid> {
    if level >= n {
        return Err(Error::InvalidInput(format!(
            "level {level} out of range for basis size {n}"
        )));
    }
    validate_grid(grid, params.g())?;
    let eig = bo_eigen(params, branch, n)?;
    let coeffs = eig.vectors.column(level);
    let psi = hermite_table(n, grid);
    let mut up = Vec::with_capacity(grid.len());
    let mut down = Vec::with_capacity(grid.len());
    for (j, &xi) in grid.iter().enumerate() {
        let s: f64 = (0..n).map(|i| coeffs[i] * psi[(i, j)]).sum();
        let v = spin_eigenvector(params, branch, xi);
        up.push(v.up * s);
        down.push(v.down * s);
    }
    fix_sign(&mut up, &mut down);
    Ok(WavefunctionGrid { method: Method::Bo, level, xi: grid.to_vec(), up, down })
}

/// Flip both components if the largest-magnitude sample is negative
/// (deterministic orientation for an otherwise arbitrary eigenvector sign).
pub(crate) fn fix_sign(up: &mut [f64], down: &mut [f64]) {
    let mut best = 0.0f64;
    let mut sign = 1.0f64;
    for v in up.iter().chain(down.iter()) {
        if v.abs() > best {
            best = v.abs();
            sign = if *v < 0.0 { -1.0 } else { 1.0 };
        }
    }
    if sign < 0.0 {
        up.iter_mut().for_each(|v| *v = -*v);
        down.iter_mut().for_each(|v| *v = -*v);
    }
}
