//! Model parameters and the analytic diagonalization of the 2x2 spin sector.
//!
//! Everything is expressed in units of the oscillator quantum (ħω = 1). The
//! Hamiltonian is
//!
//! ```text
//! H = a†a + (Δ/2)σx + g σz (a + a†) + η σz
//! ```
//!
//! In the position representation the spin sector at fixed ξ is the symmetric
//! 2x2 matrix `[[d(ξ), Δ/2], [Δ/2, −d(ξ)]]` with `d(ξ) = √2·g·ξ + η`. Its
//! eigenvalues ε±(ξ) = ±√(d² + Δ²/4) and eigenvectors are what the adiabatic
//! (Born–Oppenheimer) treatment builds on.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensionless model parameters: level splitting Δ > 0, coupling g ≥ 0,
/// asymmetry η ≥ 0.
///
/// Negative η is equivalent to positive η under ξ → −ξ plus a spin flip, so
/// it is rejected to keep conventions single-valued. Derived quantities
/// ([`beta`](Self::beta), [`g_c`](Self::g_c)) are recomputed on access and
/// never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ModelParams {
    delta: f64,
    g: f64,
    eta: f64,
}

/// Serialization shadow of [`ModelParams`]; deserialization revalidates.
#[derive(Serialize, Deserialize)]
struct RawParams {
    delta: f64,
    g: f64,
    eta: f64,
}

impl From<ModelParams> for RawParams {
    fn from(p: ModelParams) -> Self {
        RawParams { delta: p.delta, g: p.g, eta: p.eta }
    }
}

impl TryFrom<RawParams> for ModelParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        ModelParams::new(r.delta, r.g, r.eta)
    }
}

impl ModelParams {
    pub fn new(delta: f64, g: f64, eta: f64) -> Result<Self> {
        if !delta.is_finite() || delta <= 0.0 {
            return Err(Error::InvalidInput(format!("delta must be finite and > 0, got {delta}")));
        }
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidInput(format!("g must be finite and >= 0, got {g}")));
        }
        if !eta.is_finite() || eta < 0.0 {
            return Err(Error::InvalidInput(format!(
                "eta must be finite and >= 0, got {eta} (negative eta is mirror-equivalent: \
                 reflect xi and flip the spin)"
            )));
        }
        Ok(ModelParams { delta, g, eta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Dimensionless slope parameter β = 2√2·g/Δ.
    pub fn beta(&self) -> f64 {
        2.0 * SQRT_2 * self.g / self.delta
    }

    /// Coupling scale g_c = √(1 + √(1 + Δ²/16)) used to normalize the
    /// coupling axis.
    pub fn g_c(&self) -> f64 {
        g_c(self.delta)
    }

    /// Off-center diagonal d(ξ) = √2·g·ξ + η of the spin matrix.
    pub fn d(&self, xi: f64) -> f64 {
        SQRT_2 * self.g * xi + self.eta
    }

    /// Same parameters with a different coupling (validated).
    pub fn with_g(&self, g: f64) -> Result<Self> {
        ModelParams::new(self.delta, g, self.eta)
    }

    /// Same parameters with a different asymmetry (validated).
    pub fn with_eta(&self, eta: f64) -> Result<Self> {
        ModelParams::new(self.delta, self.g, eta)
    }
}

/// Coupling scale g_c(Δ) = √(1 + √(1 + Δ²/16)).
pub fn g_c(delta: f64) -> f64 {
    (1.0 + (1.0 + delta * delta / 16.0).sqrt()).sqrt()
}

/// Adiabatic surface selector. The low-energy physics lives on the negative
/// branch; the positive branch is provided as a data path only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Negative,
    Positive,
}

impl Branch {
    pub fn sign(&self) -> f64 {
        match self {
            Branch::Negative => -1.0,
            Branch::Positive => 1.0,
        }
    }
}

/// Normalized eigenvector of the 2x2 spin matrix at fixed ξ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinVector {
    pub up: f64,
    pub down: f64,
}

impl SpinVector {
    pub fn norm(&self) -> f64 {
        self.up.hypot(self.down)
    }

    pub fn dot(&self, other: &SpinVector) -> f64 {
        self.up * other.up + self.down * other.down
    }
}

/// Spin-sector matrix `[[d(ξ), Δ/2], [Δ/2, −d(ξ)]]`, exactly symmetric.
pub fn spin_hamiltonian(params: &ModelParams, xi: f64) -> [[f64; 2]; 2] {
    let d = params.d(xi);
    let t = params.delta() / 2.0;
    [[d, t], [t, -d]]
}

/// Adiabatic surface ε±(ξ) = ±√(d(ξ)² + Δ²/4).
///
/// Evaluated through d(ξ) rather than the β-form, which has a removable
/// 0·∞ at g = 0; this form is regular everywhere, so coupling sweeps can
/// include g = 0.
pub fn epsilon(params: &ModelParams, branch: Branch, xi: f64) -> f64 {
    let d = params.d(xi);
    let t = params.delta() / 2.0;
    branch.sign() * d.hypot(t)
}

/// Normalized eigenvector of [`spin_hamiltonian`] for the chosen branch.
///
/// Sign convention: the down component is ≥ 0, which makes ξ ↦ vector
/// continuous on both branches (Δ > 0 keeps the 2x2 spectrum non-degenerate,
/// so the eigenvector is unique up to this sign). The formulas below pick,
/// per sign of d, the algebraically stable representation (no subtraction of
/// nearly equal quantities).
pub fn spin_eigenvector(params: &ModelParams, branch: Branch, xi: f64) -> SpinVector {
    let d = params.d(xi);
    let t = params.delta() / 2.0;
    let r = d.hypot(t);
    match branch {
        Branch::Negative => {
            if d >= 0.0 {
                let s = (2.0 * r * (r + d)).sqrt();
                SpinVector { up: -t / s, down: (r + d) / s }
            } else {
                let s = (2.0 * r * (r - d)).sqrt();
                SpinVector { up: (d - r) / s, down: t / s }
            }
        }
        Branch::Positive => {
            if d >= 0.0 {
                let s = (2.0 * r * (r + d)).sqrt();
                SpinVector { up: (r + d) / s, down: t / s }
            } else {
                let s = (2.0 * r * (r - d)).sqrt();
                SpinVector { up: t / s, down: (r - d) / s }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(delta: f64, g: f64, eta: f64) -> ModelParams {
        ModelParams::new(delta, g, eta).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(-1.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(0.0, 0.0, 0.0).is_err());
        assert!(ModelParams::new(10.0, -0.1, 0.0).is_err());
        assert!(ModelParams::new(10.0, 1.0, -0.5).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0, 0.0).is_err());
        assert!(ModelParams::new(10.0, 1.0, 0.5).is_ok());
    }

    #[test]
    fn derived_quantities() {
        let p = params(10.0, 2.0, 0.5);
        assert_relative_eq!(p.beta(), 2.0 * SQRT_2 * 2.0 / 10.0, max_relative = 1e-15);
        // frozen: g_c(10) = sqrt(1 + sqrt(1 + 100/16))
        assert_relative_eq!(p.g_c(), 1.921609326467597, max_relative = 1e-15);
        assert_relative_eq!(g_c(10.0), 1.921609326467597, max_relative = 1e-15);
    }

    #[test]
    fn spin_hamiltonian_examples() {
        let h = spin_hamiltonian(&params(10.0, 0.0, 0.0), 1.3);
        assert_eq!(h, [[0.0, 5.0], [5.0, 0.0]]);

        let h = spin_hamiltonian(&params(10.0, 1.0, 0.5), 0.0);
        assert_eq!(h, [[0.5, 5.0], [5.0, -0.5]]);

        // d vanishes at xi = -eta/(sqrt2 g)
        let xi = -0.5 / (2.0 * SQRT_2);
        let h = spin_hamiltonian(&params(10.0, 2.0, 0.5), xi);
        assert_abs_diff_eq!(h[0][0], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(h[1][1], 0.0, epsilon = 1e-15);
        assert_eq!(h[0][1], 5.0);
    }

    #[test]
    fn epsilon_examples() {
        for g in [0.0, 0.7, 3.0] {
            assert_eq!(epsilon(&params(10.0, g, 0.0), Branch::Negative, 0.0), -5.0);
        }
        let xi = -0.5 / (2.0 * SQRT_2);
        assert_abs_diff_eq!(
            epsilon(&params(10.0, 2.0, 0.5), Branch::Positive, xi),
            5.0,
            epsilon = 1e-12
        );
        // decoupled g = 0: -sqrt(eta^2 + delta^2/4), frozen closed form
        assert_relative_eq!(
            epsilon(&params(10.0, 0.0, 0.5), Branch::Negative, 7.7),
            -5.024937810560445,
            max_relative = 1e-15
        );
    }

    #[test]
    fn epsilon_branch_symmetry_and_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let p = params(
                rng.gen_range(0.5..20.0),
                rng.gen_range(0.0..4.0),
                rng.gen_range(0.0..2.0),
            );
            let xi = rng.gen_range(-10.0..10.0);
            let en = epsilon(&p, Branch::Negative, xi);
            let ep = epsilon(&p, Branch::Positive, xi);
            assert_eq!(en, -ep);
            assert!(ep >= p.delta() / 2.0 - 1e-15);
        }
        // equality iff d = 0
        let p = params(10.0, 2.0, 0.5);
        let xi0 = -0.5 / (2.0 * SQRT_2);
        assert_abs_diff_eq!(epsilon(&p, Branch::Positive, xi0), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn eta_zero_reflection_symmetry() {
        let p = params(10.0, 1.7, 0.0);
        for xi in [0.3, 1.9, 4.2] {
            assert_eq!(
                epsilon(&p, Branch::Negative, xi),
                epsilon(&p, Branch::Negative, -xi)
            );
        }
    }

    #[test]
    fn eigenvector_at_degenerate_diagonal() {
        let p = params(10.0, 2.0, 0.5);
        let xi = -0.5 / (2.0 * SQRT_2);
        let vp = spin_eigenvector(&p, Branch::Positive, xi);
        let vn = spin_eigenvector(&p, Branch::Negative, xi);
        let inv = 1.0 / SQRT_2;
        assert_abs_diff_eq!(vp.up, inv, epsilon = 1e-12);
        assert_abs_diff_eq!(vp.down, inv, epsilon = 1e-12);
        assert_abs_diff_eq!(vn.up, -inv, epsilon = 1e-12);
        assert_abs_diff_eq!(vn.down, inv, epsilon = 1e-12);
    }

    #[test]
    fn eigenvector_residual_orthogonality_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..1000 {
            let p = params(
                rng.gen_range(0.5..20.0),
                rng.gen_range(0.0..4.0),
                rng.gen_range(0.0..2.0),
            );
            let xi = rng.gen_range(-10.0..10.0);
            let h = spin_hamiltonian(&p, xi);
            let mut vs = [SpinVector { up: 0.0, down: 0.0 }; 2];
            for (i, b) in [Branch::Negative, Branch::Positive].into_iter().enumerate() {
                let e = epsilon(&p, b, xi);
                let v = spin_eigenvector(&p, b, xi);
                assert!(v.down >= 0.0);
                assert_abs_diff_eq!(v.norm(), 1.0, epsilon = 1e-12);
                let r0 = h[0][0] * v.up + h[0][1] * v.down - e * v.up;
                let r1 = h[1][0] * v.up + h[1][1] * v.down - e * v.down;
                assert!(r0.abs().max(r1.abs()) < 1e-12, "residual {r0} {r1}");
                vs[i] = v;
            }
            assert!(vs[0].dot(&vs[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvector_continuity_across_sign_change() {
        // step across the d = 0 point and require no jump
        let p = params(10.0, 2.0, 0.5);
        let xi0 = -0.5 / (2.0 * SQRT_2);
        for b in [Branch::Negative, Branch::Positive] {
            let before = spin_eigenvector(&p, b, xi0 - 1e-9);
            let after = spin_eigenvector(&p, b, xi0 + 1e-9);
            assert_abs_diff_eq!(before.up, after.up, epsilon = 1e-8);
            assert_abs_diff_eq!(before.down, after.down, epsilon = 1e-8);
        }
    }

    #[test]
    fn params_json_round_trip() {
        let p = params(10.0, 1.5, 0.25);
        let s = serde_json::to_string(&p).unwrap();
        let q: ModelParams = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        // deserialization revalidates
        assert!(serde_json::from_str::<ModelParams>(r#"{"delta":-1.0,"g":0.0,"eta":0.0}"#).is_err());
    }
}
