//! Wasm exports for the browser demo: three operations returning slim JSON
//! payloads for the static page in `www/`.
//!
//! The adiabatic solver backs the interactive paths (its small oscillator
//! basis keeps eigensolves fast enough for a click); exact diagonalization
//! stays on the CLI. Each `*_impl` does the work with plain string errors —
//! JsValue construction panics off-wasm, so the `JsError` conversion happens
//! only in the thin `#[wasm_bindgen]` wrappers.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use aqrm::{
    find_wells, g_c, scan_coupling, solve_bo, v_eff, Axis, Branch, MethodChoice, ModelParams,
    SolverSizes, WellPoint,
};

/// Oscillator basis for the interactive solves: browser-sized, still below
/// 1e-6 absolute error on the lowest handful of levels in the demo ranges.
const WEB_BASIS: usize = 80;

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn linspace(min: f64, max: f64, n: usize) -> Vec<f64> {
    let step = (max - min) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| min + i as f64 * step).collect();
    v[n - 1] = max;
    v
}

#[derive(Serialize)]
struct ScanPayload {
    g_c: f64,
    /// g/g_c at each point.
    values: Vec<f64>,
    /// One row of k energies per point.
    energies: Vec<Vec<f64>>,
}

fn scan_spectrum_impl(
    delta: f64,
    eta: f64,
    ratio_min: f64,
    ratio_max: f64,
    steps: usize,
    levels: usize,
) -> Result<String, String> {
    if !(2..=200).contains(&steps) {
        return Err("steps must be in 2..=200".into());
    }
    if !(1..=12).contains(&levels) {
        return Err("levels must be in 1..=12".into());
    }
    let values = linspace(ratio_min, ratio_max, steps);
    let sizes = SolverSizes { bo_basis: WEB_BASIS, n_fock: 2 };
    let tables = scan_coupling(delta, eta, &values, Axis::GOverGc, MethodChoice::Bo, levels, sizes)
        .map_err(|e| e.to_string())?;
    let payload = ScanPayload {
        g_c: g_c(delta),
        values,
        energies: tables[0].points.iter().map(|p| p.spectrum.energies.clone()).collect(),
    };
    to_json(&payload)
}

/// Lowest `levels` adiabatic energies over a g/g_c sweep at fixed (Δ, η).
#[wasm_bindgen]
pub fn scan_spectrum(
    delta: f64,
    eta: f64,
    ratio_min: f64,
    ratio_max: f64,
    steps: usize,
    levels: usize,
) -> Result<String, JsError> {
    scan_spectrum_impl(delta, eta, ratio_min, ratio_max, steps, levels)
        .map_err(|m| JsError::new(&m))
}

#[derive(Serialize)]
struct PotentialPayload {
    xi: Vec<f64>,
    v: Vec<f64>,
    shape: String,
    minima: Vec<WellPoint>,
    barrier: Option<WellPoint>,
    offset: Option<f64>,
    matched_level: Option<u32>,
    g_over_gc: f64,
}

fn potential_profile_impl(
    delta: f64,
    g: f64,
    eta: f64,
    points: usize,
) -> Result<String, String> {
    if !(2..=5000).contains(&points) {
        return Err("points must be in 2..=5000".into());
    }
    let params = ModelParams::new(delta, g, eta).map_err(|e| e.to_string())?;
    let bound = std::f64::consts::SQRT_2 * g * 1.5 + 6.0;
    let xi = linspace(-bound, bound, points);
    let v: Vec<f64> = xi.iter().map(|&x| v_eff(&params, x)).collect();
    let wells = find_wells(&params);
    let payload = PotentialPayload {
        xi,
        v,
        shape: format!("{:?}", wells.shape),
        minima: wells.minima,
        barrier: wells.barrier,
        offset: wells.offset,
        matched_level: wells.matched_level,
        g_over_gc: g / params.g_c(),
    };
    to_json(&payload)
}

/// Effective-potential profile over ±(√2·g·1.5 + 6) plus its well geometry.
#[wasm_bindgen]
pub fn potential_profile(delta: f64, g: f64, eta: f64, points: usize) -> Result<String, JsError> {
    potential_profile_impl(delta, g, eta, points).map_err(|m| JsError::new(&m))
}

#[derive(Serialize)]
struct WavefunctionPayload {
    xi: Vec<f64>,
    up: Vec<f64>,
    down: Vec<f64>,
    density: Vec<f64>,
    energy: f64,
    level: usize,
}

fn wavefunction_impl(
    delta: f64,
    g: f64,
    eta: f64,
    level: usize,
    points: usize,
) -> Result<String, String> {
    if !(2..=5000).contains(&points) {
        return Err("points must be in 2..=5000".into());
    }
    if level >= 12 {
        return Err("level must be below 12".into());
    }
    let params = ModelParams::new(delta, g, eta).map_err(|e| e.to_string())?;
    let bound = std::f64::consts::SQRT_2 * g * 1.5 + 6.0;
    let xi = linspace(-bound, bound, points);
    let wf = aqrm::bo_wavefunction(&params, Branch::Negative, WEB_BASIS, level, &xi)
        .map_err(|e| e.to_string())?;
    let spectrum = solve_bo(&params, Branch::Negative, WEB_BASIS, level + 1)
        .map_err(|e| e.to_string())?;
    let payload = WavefunctionPayload {
        density: wf.density(),
        xi: wf.xi,
        up: wf.up,
        down: wf.down,
        energy: spectrum.energies[level],
        level,
    };
    to_json(&payload)
}

/// One adiabatic level's spin-resolved wavefunction and density on a grid
/// spanning the support bound.
#[wasm_bindgen]
pub fn wavefunction(
    delta: f64,
    g: f64,
    eta: f64,
    level: usize,
    points: usize,
) -> Result<String, JsError> {
    wavefunction_impl(delta, g, eta, level, points).map_err(|m| JsError::new(&m))
}
