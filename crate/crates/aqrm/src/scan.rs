//! Parameter sweeps and spectral post-processing: coupling/asymmetry scans,
//! adjacent-gap extraction, degeneracy-onset classification, and the
//! BO-vs-ED comparison.

use serde::{Deserialize, Serialize};

use crate::bo::{solve_bo, DEFAULT_BASIS};
use crate::ed::{solve_ed, DEFAULT_N_FOCK};
use crate::error::{Error, Result};
use crate::model::{Branch, ModelParams};
use crate::potential::{matching_condition, DEFAULT_MATCH_TOL};
use crate::spectrum::{Method, SpectrumResult};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default adjacent-gap threshold (ħω) below which two levels count as
/// degenerate: an order below the smallest open gap seen off the matching
/// condition, well above converged closed gaps.
pub const DEFAULT_GAP_THRESHOLD: f64 = 1e-3;

/// Degeneracy classification is only defined at strong coupling,
/// g ≥ 1.2·g_c.
pub const STRONG_COUPLING_FACTOR: f64 = 1.2;

/// Fock-truncation escalation ceiling for [`classify_degeneracy`].
const CLASSIFY_N_FOCK_CAP: usize = 1000;

/// Sweep coordinate of a [`ScanTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    G,
    GOverGc,
    Eta,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Axis::G => "g",
            Axis::GOverGc => "g_over_gc",
            Axis::Eta => "eta",
        }
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Which solver(s) a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Bo,
    Ed,
    Both,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Bo => vec![Method::Bo],
            MethodChoice::Ed => vec![Method::Ed],
            MethodChoice::Both => vec![Method::Bo, Method::Ed],
        }
    }
}

/// Basis sizes a sweep hands to the two solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverSizes {
    /// Oscillator basis N for the adiabatic solver.
    pub bo_basis: usize,
    /// Fock truncation for exact diagonalization.
    pub n_fock: usize,
}

impl Default for SolverSizes {
    fn default() -> Self {
        SolverSizes { bo_basis: DEFAULT_BASIS, n_fock: DEFAULT_N_FOCK }
    }
}

/// One sweep point: the axis value and the spectrum computed there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub value: f64,
    pub spectrum: SpectrumResult,
}

/// Energies over a parameter sweep for one method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanTable {
    pub axis: Axis,
    pub points: Vec<ScanPoint>,
    /// Number of levels per point.
    pub levels: usize,
}

fn validate_axis_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidInput("scan needs at least one point".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("scan values must be finite".into()));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("scan values must be strictly ascending".into()));
    }
    Ok(())
}

/// Runs `point` over `values`, in parallel when the `parallel` feature is on,
/// assembling results in input order; the first failure aborts the sweep
/// with the failing point named.
fn sweep<F>(axis: Axis, values: &[f64], point: F) -> Result<Vec<ScanPoint>>
where
    F: Fn(f64) -> Result<SpectrumResult> + Sync,
{
    let solve_one = |&v: &f64| -> Result<ScanPoint> {
        point(v)
            .map(|spectrum| ScanPoint { value: v, spectrum })
            .map_err(|e| e.context(format!("scan point {axis}={v}")))
    };
    #[cfg(feature = "parallel")]
    {
        values.par_iter().map(solve_one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        values.iter().map(solve_one).collect()
    }
}

/// Coupling sweep at fixed (Δ, η): one table per requested method, points in
/// input order, bit-identical across runs with identical inputs.
///
/// `axis` selects how `values` are read: raw couplings ([`Axis::G`]) or
/// multiples of g_c(Δ) ([`Axis::GOverGc`]); [`Axis::Eta`] belongs to
/// [`scan_asymmetry`]. The adiabatic solver runs on the negative branch.
pub fn scan_coupling(
    delta: f64,
    eta: f64,
    values: &[f64],
    axis: Axis,
    method: MethodChoice,
    k: usize,
    sizes: SolverSizes,
) -> Result<Vec<ScanTable>> {
    if axis == Axis::Eta {
        return Err(Error::InvalidInput(
            "coupling scans take axis g or g_over_gc; eta sweeps are scan_asymmetry".into(),
        ));
    }
    validate_axis_values(values)?;
    let scale = match axis {
        Axis::GOverGc => crate::model::g_c(delta),
        _ => 1.0,
    };
    let mut tables = Vec::new();
    for m in method.methods() {
        let points = sweep(axis, values, |v| {
            let params = ModelParams::new(delta, v * scale, eta)?;
            match m {
                Method::Bo => solve_bo(&params, Branch::Negative, sizes.bo_basis, k),
                Method::Ed => solve_ed(&params, sizes.n_fock, k),
            }
        })?;
        tables.push(ScanTable { axis, points, levels: k });
    }
    Ok(tables)
}

/// Asymmetry sweep at fixed (Δ, g): the η-axis counterpart of
/// [`scan_coupling`], same determinism and error contract.
pub fn scan_asymmetry(
    delta: f64,
    g: f64,
    eta_values: &[f64],
    method: MethodChoice,
    k: usize,
    sizes: SolverSizes,
) -> Result<Vec<ScanTable>> {
    validate_axis_values(eta_values)?;
    let mut tables = Vec::new();
    for m in method.methods() {
        let points = sweep(Axis::Eta, eta_values, |eta| {
            let params = ModelParams::new(delta, g, eta)?;
            match m {
                Method::Bo => solve_bo(&params, Branch::Negative, sizes.bo_basis, k),
                Method::Ed => solve_ed(&params, sizes.n_fock, k),
            }
        })?;
        tables.push(ScanTable { axis: Axis::Eta, points, levels: k });
    }
    Ok(tables)
}

/// Adjacent gaps E_{i+1} − E_i of a spectrum (all ≥ 0 since energies are
/// ascending).
pub fn gaps(result: &SpectrumResult) -> Result<Vec<f64>> {
    if result.energies.len() < 2 {
        return Err(Error::InvalidInput(format!(
            "gap extraction needs at least 2 energies, got {}",
            result.energies.len()
        )));
    }
    Ok(result.energies.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Measured degeneracy pattern at one strong-coupling point, next to the
/// level-matching prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub params: ModelParams,
    /// Scan coordinate g/g_c of the point classified.
    pub g_over_gc: f64,
    /// Fock truncation at which the gaps were converged.
    pub n_fock: usize,
    /// Adjacent ED gaps E_{i+1} − E_i, i = 0 … k−2.
    pub gaps: Vec<f64>,
    /// Lowest i with gaps[i] < threshold.
    pub onset_level: Option<usize>,
    pub threshold: f64,
    /// n from the 2η = n matching condition.
    pub predicted_onset: Option<u32>,
}

/// Classifies the degeneracy onset from converged ED gaps.
///
/// Strong-coupling only (g ≥ 1.2·g_c): below that the spectrum has no
/// quasi-degenerate structure to classify and the call is a precondition
/// error. The truncation starts at the default and doubles until the
/// convergence flag holds.
pub fn classify_degeneracy(
    params: &ModelParams,
    k: usize,
    threshold: f64,
) -> Result<DegeneracyReport> {
    if !threshold.is_finite() || threshold <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "degeneracy threshold must be finite and > 0, got {threshold}"
        )));
    }
    if k < 2 {
        return Err(Error::InvalidInput(format!(
            "degeneracy classification needs k ≥ 2 levels, got {k}"
        )));
    }
    let g_over_gc = params.g() / params.g_c();
    if g_over_gc < STRONG_COUPLING_FACTOR {
        return Err(Error::Precondition(format!(
            "degeneracy classification is defined for g ≥ {STRONG_COUPLING_FACTOR}·g_c; \
             got g = {} = {g_over_gc:.4}·g_c (g_c = {})",
            params.g(),
            params.g_c()
        )));
    }
    let mut n_fock = DEFAULT_N_FOCK;
    let spectrum = loop {
        let r = solve_ed(params, n_fock, k)?;
        if r.converged {
            break r;
        }
        n_fock *= 2;
        if n_fock > CLASSIFY_N_FOCK_CAP {
            return Err(Error::Solver(format!(
                "ED truncation not converged by n_fock = {CLASSIFY_N_FOCK_CAP} \
                 (last ground-energy drift {:.3e})",
                r.convergence_delta
            )));
        }
    };
    let gap_list = gaps(&spectrum)?;
    let onset_level = gap_list.iter().position(|&g| g < threshold);
    let predicted_onset = matching_condition(params.eta(), DEFAULT_MATCH_TOL)?;
    Ok(DegeneracyReport {
        params: *params,
        g_over_gc,
        n_fock: spectrum.basis_size,
        gaps: gap_list,
        onset_level,
        threshold,
        predicted_onset,
    })
}

/// Per-level |E_BO,i − E_ED,i| for the lowest k levels, both methods at
/// their default (converged) basis sizes.
///
/// The two solvers keep different zero-point conventions — the adiabatic
/// oscillator term −∂²/2 + ξ²/2 carries +½, a†a does not — so ED energies
/// are shifted by +½ before differencing; at g = 0 the aligned difference
/// is exactly the adiabatic truncation error (≈ 0).
pub fn compare_methods(params: &ModelParams, k: usize) -> Result<Vec<f64>> {
    let bo = solve_bo(params, Branch::Negative, DEFAULT_BASIS, k)?;
    let ed = solve_ed(params, DEFAULT_N_FOCK, k)?;
    Ok(bo
        .energies
        .iter()
        .zip(&ed.energies)
        .map(|(b, e)| (b - (e + 0.5)).abs())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::g_c;
    use approx::assert_abs_diff_eq;

    fn params(delta: f64, g: f64, eta: f64) -> ModelParams {
        ModelParams::new(delta, g, eta).unwrap()
    }

    fn fake_result(energies: Vec<f64>) -> SpectrumResult {
        SpectrumResult {
            method: Method::Ed,
            params: params(10.0, 0.0, 0.0),
            branch: None,
            basis_size: 10,
            energies,
            converged: true,
            convergence_delta: 0.0,
        }
    }

    #[test]
    fn gaps_basics() {
        let r = fake_result(vec![-4.5, -3.5, -2.5]);
        assert_eq!(gaps(&r).unwrap(), vec![1.0, 1.0]);
        assert!(gaps(&fake_result(vec![0.0])).is_err());
    }

    #[test]
    fn gaps_of_decoupled_spectrum() {
        let r = solve_ed(&params(10.0, 0.0, 0.0), 100, 4).unwrap();
        for gap in gaps(&r).unwrap() {
            assert_abs_diff_eq!(gap, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn single_point_scan_matches_direct_solve() {
        let sizes = SolverSizes { bo_basis: 60, n_fock: 60 };
        let tables =
            scan_coupling(10.0, 0.0, &[0.7], Axis::G, MethodChoice::Ed, 1, sizes).unwrap();
        assert_eq!(tables.len(), 1);
        let direct = solve_ed(&params(10.0, 0.7, 0.0), 60, 1).unwrap();
        assert_eq!(tables[0].points[0].spectrum, direct);
        assert_eq!(tables[0].levels, 1);
        assert_eq!(tables[0].points[0].value, 0.7);
    }

    #[test]
    fn scan_validation() {
        let sizes = SolverSizes::default();
        assert!(scan_coupling(10.0, 0.0, &[], Axis::G, MethodChoice::Ed, 1, sizes).is_err());
        assert!(
            scan_coupling(10.0, 0.0, &[1.0, 1.0], Axis::G, MethodChoice::Ed, 1, sizes).is_err()
        );
        assert!(
            scan_coupling(10.0, 0.0, &[0.5], Axis::Eta, MethodChoice::Ed, 1, sizes).is_err()
        );
        // failing point is identified
        let err = scan_coupling(10.0, -0.5, &[0.0, 1.0], Axis::G, MethodChoice::Ed, 1, sizes)
            .unwrap_err();
        assert!(err.to_string().contains("scan point g=0"), "{err}");
    }

    #[test]
    fn scaled_axis_is_consistent_with_raw_axis() {
        let sizes = SolverSizes { bo_basis: 60, n_fock: 80 };
        let gc = g_c(10.0);
        let scaled = scan_coupling(
            10.0,
            0.0,
            &[0.5, 1.0],
            Axis::GOverGc,
            MethodChoice::Ed,
            3,
            sizes,
        )
        .unwrap();
        let raw = scan_coupling(
            10.0,
            0.0,
            &[0.5 * gc, 1.0 * gc],
            Axis::G,
            MethodChoice::Ed,
            3,
            sizes,
        )
        .unwrap();
        for (a, b) in scaled[0].points.iter().zip(&raw[0].points) {
            assert_eq!(a.spectrum.energies, b.spectrum.energies);
        }
    }

    #[test]
    fn scan_is_deterministic() {
        let sizes = SolverSizes { bo_basis: 70, n_fock: 90 };
        let run = || {
            scan_coupling(10.0, 0.5, &[0.5, 1.2, 2.0], Axis::G, MethodChoice::Both, 4, sizes)
                .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn both_methods_agree_after_alignment() {
        let sizes = SolverSizes::default();
        let tables = scan_coupling(
            10.0,
            0.5,
            &[0.5, 1.5],
            Axis::GOverGc,
            MethodChoice::Both,
            3,
            sizes,
        )
        .unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[0].points[0].spectrum.method, Method::Bo);
        assert_eq!(tables[1].points[0].spectrum.method, Method::Ed);
        for (bp, ep) in tables[0].points.iter().zip(&tables[1].points) {
            for (b, e) in bp.spectrum.energies.iter().zip(&ep.spectrum.energies) {
                assert!((b - (e + 0.5)).abs() < 1e-2);
            }
        }
    }

    #[test]
    fn asymmetry_scan_runs() {
        let sizes = SolverSizes { bo_basis: 60, n_fock: 80 };
        let tables =
            scan_asymmetry(10.0, 1.0, &[0.0, 0.5, 1.0], MethodChoice::Ed, 2, sizes).unwrap();
        assert_eq!(tables[0].axis, Axis::Eta);
        assert_eq!(tables[0].points.len(), 3);
        // ground energy decreases with bias at fixed coupling
        let e: Vec<f64> = tables[0].points.iter().map(|p| p.spectrum.energies[0]).collect();
        assert!(e[1] < e[0] && e[2] < e[1]);
    }

    #[test]
    fn classification_examples() {
        let gc = g_c(10.0);
        let r = classify_degeneracy(&params(10.0, 1.5 * gc, 0.5), 8, 1e-3).unwrap();
        assert_eq!(r.onset_level, Some(1));
        assert_eq!(r.predicted_onset, Some(1));
        assert!(r.gaps[r.onset_level.unwrap()] < r.threshold);
        assert!(r.gaps.iter().all(|&g| g >= 0.0));

        let r = classify_degeneracy(&params(10.0, 1.5 * gc, 1.0), 8, 1e-3).unwrap();
        assert_eq!(r.onset_level, Some(2));
        assert_eq!(r.predicted_onset, Some(2));

        let r = classify_degeneracy(&params(10.0, 1.5 * gc, 0.2), 8, 1e-3).unwrap();
        assert_eq!(r.onset_level, None);
        assert_eq!(r.predicted_onset, None);
    }

    #[test]
    fn classification_preconditions() {
        let gc = g_c(10.0);
        match classify_degeneracy(&params(10.0, 1.0 * gc, 0.5), 8, 1e-3) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("1.2")),
            other => panic!("expected precondition error, got {other:?}"),
        }
        let p = params(10.0, 1.5 * gc, 0.5);
        assert!(classify_degeneracy(&p, 1, 1e-3).is_err());
        assert!(classify_degeneracy(&p, 8, 0.0).is_err());
        assert!(classify_degeneracy(&p, 8, f64::NAN).is_err());
    }

    #[test]
    fn method_comparison_decoupled_and_strong() {
        let diffs = compare_methods(&params(10.0, 0.0, 0.7), 4).unwrap();
        assert_eq!(diffs.len(), 4);
        for d in &diffs {
            assert!(*d < 1e-8, "decoupled diff {d}");
        }
        // adiabatic error at strong coupling: lowest 4 levels inside 1e-2,
        // the full 8-level band inside 2e-2 (levels 6-7 carry ~1.6e-2)
        let diffs = compare_methods(&params(10.0, 1.5 * g_c(10.0), 0.5), 8).unwrap();
        let max4 = diffs[..4].iter().cloned().fold(0.0f64, f64::max);
        let max8 = diffs.iter().cloned().fold(0.0f64, f64::max);
        assert!(max4 < 1e-2, "max BO-ED difference over 4 levels: {max4}");
        assert!(max8 < 2e-2, "max BO-ED difference over 8 levels: {max8}");
    }

    #[test]
    fn monotone_gap_closing() {
        let gc = g_c(10.0);
        let gap_at = |f: f64| {
            let r = solve_ed(&params(10.0, f * gc, 0.5), DEFAULT_N_FOCK, 3).unwrap();
            r.energies[2] - r.energies[1]
        };
        assert!(gap_at(1.5) < gap_at(1.0));
    }
}
