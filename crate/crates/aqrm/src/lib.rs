//! Asymmetric quantum Rabi model (AQRM) solvers and analysis.
//!
//! The model is a single bosonic mode coupled to a two-level system with a
//! bias on the spin,
//!
//! ```text
//! H = a†a + (Δ/2)σx + g σz (a + a†) + η σz        (ħω = 1)
//! ```
//!
//! Two independent routes to its spectrum live here:
//!
//! - **Adiabatic ([`bo`])** — two successive diagonalizations: the 2×2 spin
//!   sector is diagonalized analytically at fixed position ξ ([`model`]),
//!   leaving a scalar Schrödinger problem on one adiabatic surface that is
//!   then diagonalized numerically in the harmonic-oscillator basis.
//! - **Exact ([`ed`])** — dense diagonalization in the truncated Fock ⊗ spin
//!   basis, the full-physics oracle.
//!
//! On top of the solvers: the effective double-well potential and its
//! geometry ([`potential`]), and parameter sweeps with degeneracy-onset
//! classification ([`scan`]) — the machinery for the model's hidden-symmetry
//! pattern, where level degeneracies vanish for generic bias η yet are
//! restored at strong coupling whenever 2η is a positive integer, with the
//! degenerate ladder starting at that level index.
//!
//! Everything is deterministic: identical inputs produce identical bytes.
//! With the default `parallel` feature, sweeps fan out over points without
//! changing results.

pub mod bo;
pub mod ed;
pub mod error;
pub mod model;
pub mod numerics;
pub mod potential;
pub mod scan;
pub mod spectrum;

pub use bo::{bo_wavefunction, build_bo_hamiltonian, solve_bo, solve_bo_with_order, DEFAULT_BASIS};
pub use ed::{
    build_full_hamiltonian, ed_wavefunction, parity_commutator_norm, solve_ed, FockSpinBasis,
    DEFAULT_N_FOCK,
};
pub use error::{Error, Result};
pub use model::{epsilon, g_c, spin_eigenvector, spin_hamiltonian, Branch, ModelParams, SpinVector};
pub use numerics::{
    basis_matrix_element, gauss_hermite, hermite_function, sym_eigen, EigenDecomposition,
    QuadratureRule,
};
pub use potential::{
    double_well_onset, find_wells, matching_condition, taylor_coefficients, v_eff,
    TaylorCoefficients, WellPoint, WellReport, WellShape,
};
pub use scan::{
    classify_degeneracy, compare_methods, gaps, scan_asymmetry, scan_coupling, Axis,
    DegeneracyReport, MethodChoice, ScanPoint, ScanTable, SolverSizes,
};
pub use spectrum::{Method, SpectrumResult, WavefunctionGrid, CONVERGENCE_TOL};
