//! Effective-potential analysis on the lower adiabatic surface: the
//! potential itself, its Taylor expansion about ξ = 0, well/barrier
//! geometry, and the 2η = n level-matching predictor for the restored
//! degeneracies.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{epsilon, Branch, ModelParams};

/// Default |2η − n| tolerance for the level-matching predictor.
pub const DEFAULT_MATCH_TOL: f64 = 1e-9;

/// Effective potential V_eff(ξ) = ξ²/2 + ε_−(ξ) = ξ²/2 − √(d(ξ)² + Δ²/4).
///
/// Shares the ε code path with the model layer and is regular at g = 0.
pub fn v_eff(params: &ModelParams, xi: f64) -> f64 {
    0.5 * xi * xi + epsilon(params, Branch::Negative, xi)
}

/// Coefficients of V_eff(ξ) ≈ c0 + c1·ξ + c2·ξ² + c3·ξ³ + c4·ξ⁴ about ξ = 0.
///
/// At η = 0 the odd coefficients vanish identically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorCoefficients {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// Closed-form Taylor coefficients of V_eff about ξ = 0, in the
/// A = 2g² + β²η² parametrization (β = 2√2·g/Δ).
///
/// The closed forms carry 1/g powers, so g = 0 is excluded; the potential
/// there is exactly ξ²/2 − √(η² + Δ²/4) (constant shift, c2 = ½, all other
/// coefficients zero), which needs no expansion machinery.
pub fn taylor_coefficients(params: &ModelParams) -> Result<TaylorCoefficients> {
    let g = params.g();
    if g == 0.0 {
        return Err(Error::Precondition(
            "Taylor coefficient formulas are singular at g = 0; use the exact decoupled \
             potential xi^2/2 - sqrt(eta^2 + delta^2/4) instead"
                .into(),
        ));
    }
    let delta = params.delta();
    let eta = params.eta();
    let beta = params.beta();
    let a = 2.0 * g * g + beta * beta * eta * eta;
    let s = a.sqrt();
    Ok(TaylorCoefficients {
        c0: -(delta / (2.0 * SQRT_2 * g)) * s,
        c1: -(4.0 * g * g * eta / delta) / s,
        c2: 0.5 - (4.0 * SQRT_2 * g.powi(5) / delta) / (s * a),
        c3: (64.0 * g.powi(8) * eta / delta.powi(3)) / (s * a * a),
        c4: (32.0 * SQRT_2 * g.powi(11) / delta.powi(3)
            - 512.0 * SQRT_2 * g.powi(11) * eta * eta / delta.powi(5))
            / (s * a * a * a),
    })
}

/// Well topology of V_eff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WellShape {
    SingleWell,
    DoubleWell,
}

/// A stationary point (position, potential value).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellPoint {
    pub xi: f64,
    pub v: f64,
}

/// Geometry report for V_eff: minima (ascending ξ), the barrier between them
/// when the potential is a double well, the minima offset, and the
/// level-matching prediction for η.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WellReport {
    pub shape: WellShape,
    pub minima: Vec<WellPoint>,
    pub barrier: Option<WellPoint>,
    /// V(higher minimum) − V(lower minimum), ≥ 0; `None` for a single well.
    pub offset: Option<f64>,
    /// n from [`matching_condition`] at the default tolerance, when 2η sits
    /// on a positive integer.
    pub matched_level: Option<u32>,
}

/// Bisection to the requested interval width; `f(lo)` and `f(hi)` must have
/// opposite signs.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let neg_lo = f(lo) < 0.0;
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Locates all stationary points of V_eff and classifies the well structure.
///
/// Works on the analytic derivative V′(ξ) = ξ − √2·g·d(ξ)/√(d(ξ)² + Δ²/4),
/// recast in the variable d: roots of F(d) = d − η − 2g²·d/√(d² + Δ²/4).
/// F has interior extrema at ±s (s² = (2g²t²)^{2/3} − t², t = Δ/2) exactly
/// when g > √Δ/2, and at most three roots; each is bracketed and bisected to
/// |ξ| tolerance 1e−10. The scan window ±(√2·g + 6) always contains every
/// stationary point.
pub fn find_wells(params: &ModelParams) -> WellReport {
    let matched = matching_condition(params.eta(), DEFAULT_MATCH_TOL)
        .expect("default tolerance is positive");
    let g = params.g();
    if g == 0.0 {
        // V' = xi exactly: single minimum at the origin
        return WellReport {
            shape: WellShape::SingleWell,
            minima: vec![WellPoint { xi: 0.0, v: v_eff(params, 0.0) }],
            barrier: None,
            offset: None,
            matched_level: matched,
        };
    }
    let t = params.delta() / 2.0;
    let eta = params.eta();
    let f = |d: f64| d - eta - 2.0 * g * g * d / d.hypot(t);
    let span = SQRT_2 * g + 6.0;
    let d_lo = params.d(-span);
    let d_hi = params.d(span);
    let d_tol = 1e-10 * SQRT_2 * g;

    let s2 = (2.0 * g * g * t * t).powf(2.0 / 3.0) - t * t;
    let mut roots_d = Vec::with_capacity(3);
    if s2 > 0.0 {
        let s = s2.sqrt();
        if f(-s) > 0.0 && f(s) < 0.0 {
            // three stationary points: min, max, min in ascending d
            roots_d.push(bisect(f, d_lo, -s, d_tol));
            roots_d.push(bisect(f, -s, s, d_tol));
            roots_d.push(bisect(f, s, d_hi, d_tol));
        }
    }
    if roots_d.is_empty() {
        roots_d.push(bisect(f, d_lo, d_hi, d_tol));
    }
    let points: Vec<WellPoint> = roots_d
        .iter()
        .map(|&d| {
            let xi = (d - eta) / (SQRT_2 * g);
            WellPoint { xi, v: v_eff(params, xi) }
        })
        .collect();

    if points.len() == 3 {
        let (left, top, right) = (points[0], points[1], points[2]);
        let offset = (left.v - right.v).abs();
        WellReport {
            shape: WellShape::DoubleWell,
            minima: vec![left, right],
            barrier: Some(top),
            offset: Some(offset),
            matched_level: matched,
        }
    } else {
        WellReport {
            shape: WellShape::SingleWell,
            minima: points,
            barrier: None,
            offset: None,
            matched_level: matched,
        }
    }
}

/// Level-matching predictor: `Some(n)` when |2η − n| ≤ tolerance for a
/// positive integer n (ω = 1 units); n is then the first excited-level index
/// from which adjacent degeneracies are restored at strong coupling.
pub fn matching_condition(eta: f64, tolerance: f64) -> Result<Option<u32>> {
    if !eta.is_finite() {
        return Err(Error::InvalidInput(format!("eta must be finite, got {eta}")));
    }
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "matching tolerance must be finite and > 0, got {tolerance}"
        )));
    }
    let n = (2.0 * eta).round();
    if n >= 1.0 && (2.0 * eta - n).abs() <= tolerance {
        Ok(Some(n as u32))
    } else {
        Ok(None)
    }
}

/// Coupling at which V_eff changes from single to double well, by bisecting
/// the [`find_wells`] classifier over `g_range`.
///
/// At η = 0 this agrees with the analytic curvature criterion g* = √Δ/2
/// (the c2 = 0 root); for η > 0 there is no closed form and the classifier
/// is the definition.
pub fn double_well_onset(delta: f64, eta: f64, g_range: (f64, f64)) -> Result<f64> {
    let (g_lo, g_hi) = g_range;
    if !g_lo.is_finite() || !g_hi.is_finite() || g_lo < 0.0 || g_lo >= g_hi {
        return Err(Error::InvalidInput(format!(
            "g range must satisfy 0 ≤ lo < hi and be finite, got ({g_lo}, {g_hi})"
        )));
    }
    let base = ModelParams::new(delta, g_lo, eta)?;
    let shape_at = |g: f64| find_wells(&base.with_g(g).expect("validated range")).shape;
    if shape_at(g_lo) != WellShape::SingleWell || shape_at(g_hi) != WellShape::DoubleWell {
        return Err(Error::Precondition(format!(
            "g range ({g_lo}, {g_hi}) does not bracket a single-to-double-well transition \
             at delta={delta}, eta={eta}"
        )));
    }
    let mut lo = g_lo;
    let mut hi = g_hi;
    for _ in 0..200 {
        if hi - lo <= 1e-12 * (1.0 + hi) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if shape_at(mid) == WellShape::SingleWell {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
