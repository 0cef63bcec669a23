//! Cross-module invariants exercised through the public API: closed-form
//! Taylor coefficients against a high-precision finite-difference oracle,
//! adiabatic-vs-exact agreement, wavefunction overlap and norms, degeneracy
//! onset consistency, and serialization round-trips.

use aqrm::{
    bo_wavefunction, classify_degeneracy, compare_methods, ed_wavefunction, find_wells, g_c,
    matching_condition, scan_coupling, solve_ed, taylor_coefficients, v_eff, Axis, Branch,
    MethodChoice, ModelParams, SolverSizes, WellShape,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twofloat::TwoFloat;

fn params(delta: f64, g: f64, eta: f64) -> ModelParams {
    ModelParams::new(delta, g, eta).unwrap()
}

/// V_eff in double-double precision: ξ²/2 − √(d² + Δ²/4), d = √2·g·ξ + η.
fn v_eff_dd(delta: f64, g: f64, eta: f64, xi: TwoFloat) -> TwoFloat {
    let sqrt2 = TwoFloat::from(2.0).sqrt();
    let d = sqrt2 * g * xi + TwoFloat::from(eta);
    let t = TwoFloat::from(delta) / 2.0;
    xi * xi / 2.0 - (d * d + t * t).sqrt()
}

/// 5-point central stencils for f′…f⁗ at 0 with step h, in double-double.
fn stencil(delta: f64, g: f64, eta: f64, h: f64) -> [TwoFloat; 4] {
    let f = |x: f64| v_eff_dd(delta, g, eta, TwoFloat::from(x));
    let (fm2, fm1, f0, fp1, fp2) = (f(-2.0 * h), f(-h), f(0.0), f(h), f(2.0 * h));
    let hh = TwoFloat::from(h);
    [
        (fm2 - fp2 + (fp1 - fm1) * 8.0) / (hh * 12.0),
        (-fm2 - fp2 + (fp1 + fm1) * 16.0 - f0 * 30.0) / (hh * hh * 12.0),
        (fp2 - fm2 + (fm1 - fp1) * 2.0) / (hh.powi(3) * 2.0),
        (fp2 + fm2 - (fp1 + fm1) * 4.0 + f0 * 6.0) / hh.powi(4),
    ]
}

/// Richardson extrapolation over h, h/2, h/4, h/8 (h² error series);
/// double-double evaluation keeps roundoff far below the truncation terms.
fn fd_derivatives(delta: f64, g: f64, eta: f64, h0: f64) -> [f64; 4] {
    let mut t: Vec<[TwoFloat; 4]> =
        (0..4).map(|i| stencil(delta, g, eta, h0 / f64::powi(2.0, i))).collect();
    for j in 1..4 {
        let f = f64::powi(4.0, j as i32);
        for i in (j..4).rev() {
            let (prev, cur) = t.split_at_mut(i);
            for (c, p) in cur[0].iter_mut().zip(&prev[i - 1]) {
                *c = (*c * f - *p) / (f - 1.0);
            }
        }
    }
    [t[3][0].into(), t[3][1].into(), t[3][2].into(), t[3][3].into()]
}

fn fd_coefficients(p: &ModelParams) -> [f64; 5] {
    let (delta, g, eta) = (p.delta(), p.g(), p.eta());
    // step tied to the ξ-scale over which d(ξ) varies by Δ/2
    let scale = (delta / 2.0) / (std::f64::consts::SQRT_2 * g);
    let h0 = 0.25 * scale.min(1.0);
    let d = fd_derivatives(delta, g, eta, h0);
    [v_eff(p, 0.0), d[0], d[1] / 2.0, d[2] / 6.0, d[3] / 24.0]
}

#[test]
fn taylor_matches_high_precision_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..20 {
        let p = params(
            rng.gen_range(2.0..20.0),
            rng.gen_range(0.5..4.0),
            rng.gen_range(0.0..2.0),
        );
        let c = taylor_coefficients(&p).unwrap();
        let fd = fd_coefficients(&p);
        for (k, (closed, approx)) in
            [c.c0, c.c1, c.c2, c.c3, c.c4].iter().zip(&fd).enumerate()
        {
            let rel = (closed - approx).abs() / approx.abs().max(1e-300);
            assert!(
                rel < 1e-6,
                "trial {trial} (Δ={}, g={}, η={}): c{k} closed {closed:e} vs fd {approx:e} \
                 (rel {rel:e})",
                p.delta(),
                p.g(),
                p.eta()
            );
        }
    }
}

#[test]
fn odd_taylor_coefficients_vanish_without_bias() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..5 {
        let p = params(rng.gen_range(2.0..20.0), rng.gen_range(0.5..4.0), 0.0);
        let c = taylor_coefficients(&p).unwrap();
        assert_eq!(c.c1, 0.0);
        assert_eq!(c.c3, 0.0);
    }
}

#[test]
fn method_agreement_over_parameter_grid() {
    // the adiabatic solver tracks exact diagonalization across the sweep
    // grid; the worst level-points (shape-transition region g ≈ g_c and
    // levels 6-7 at strong coupling) stay below 2e-2
    let gc = g_c(10.0);
    let mut worst = 0.0f64;
    for eta in [0.0, 0.2, 0.5, 0.8, 1.0, 1.5] {
        for f in [0.5, 1.0, 1.5] {
            let diffs = compare_methods(&params(10.0, f * gc, eta), 8).unwrap();
            for (level, d) in diffs.iter().enumerate() {
                assert!(*d < 2e-2, "η={eta}, g/g_c={f}, level {level}: |ΔE| = {d}");
                worst = worst.max(*d);
            }
        }
    }
    assert!(worst > 1e-4, "grid suspiciously perfect: worst {worst}");
}

#[test]
fn cross_method_ground_state_overlap() {
    let p = params(10.0, 1.5 * g_c(10.0), 0.5);
    let grid: Vec<f64> = (-1300..=1300).map(|i| 0.01 * i as f64).collect();
    let b = bo_wavefunction(&p, Branch::Negative, 120, 0, &grid).unwrap();
    let e = ed_wavefunction(&p, 250, 0, &grid).unwrap();
    let mut overlap = 0.0;
    for i in 1..grid.len() {
        let f = |j: usize| b.up[j] * e.up[j] + b.down[j] * e.down[j];
        overlap += 0.5 * (f(i) + f(i - 1)) * (grid[i] - grid[i - 1]);
    }
    assert!(overlap.abs() > 0.999, "overlap {overlap}");
}

#[test]
fn wavefunction_norms_hold_for_both_methods() {
    let p = params(10.0, 1.5 * g_c(10.0), 0.5);
    let grid: Vec<f64> = (-1300..=1300).map(|i| 0.01 * i as f64).collect();
    for level in [0usize, 1, 2] {
        let b = bo_wavefunction(&p, Branch::Negative, 120, level, &grid).unwrap();
        assert!((b.trapezoid_norm() - 1.0).abs() < 1e-6, "bo level {level}");
        let e = ed_wavefunction(&p, 250, level, &grid).unwrap();
        assert!((e.trapezoid_norm() - 1.0).abs() < 1e-6, "ed level {level}");
    }
}

#[test]
fn onset_consistency_with_matching_condition() {
    let gc = g_c(10.0);
    for eta in [0.5, 1.0, 1.5] {
        let predicted = matching_condition(eta, 1e-9).unwrap().expect("2η integer");
        let report = classify_degeneracy(&params(10.0, 1.5 * gc, eta), 8, 1e-3).unwrap();
        assert_eq!(report.onset_level, Some(predicted as usize), "η={eta}");
        assert_eq!(report.predicted_onset, Some(predicted), "η={eta}");
    }
}

#[test]
fn offset_ratio_approaches_two_eta() {
    let gc = g_c(10.0);
    let ratio = |f: f64| {
        let r = find_wells(&params(10.0, f * gc, 0.5));
        assert_eq!(r.shape, WellShape::DoubleWell);
        r.offset.unwrap() / 1.0
    };
    let lo = ratio(1.2);
    let hi = ratio(2.0);
    assert!(
        (1.0 - hi).abs() < (1.0 - lo).abs(),
        "offset ratio did not improve: {lo} -> {hi}"
    );
}

#[test]
fn json_round_trips_field_for_field() {
    let p = params(10.0, 1.5 * g_c(10.0), 0.5);

    let spec = solve_ed(&p, 60, 4).unwrap();
    let s = serde_json::to_string(&spec).unwrap();
    assert_eq!(serde_json::from_str::<aqrm::SpectrumResult>(&s).unwrap(), spec);

    let tables = scan_coupling(
        10.0,
        0.5,
        &[0.5, 1.0],
        Axis::GOverGc,
        MethodChoice::Both,
        3,
        SolverSizes { bo_basis: 60, n_fock: 60 },
    )
    .unwrap();
    let s = serde_json::to_string(&tables).unwrap();
    assert_eq!(serde_json::from_str::<Vec<aqrm::ScanTable>>(&s).unwrap(), tables);

    let wells = find_wells(&p);
    let s = serde_json::to_string(&wells).unwrap();
    assert_eq!(serde_json::from_str::<aqrm::WellReport>(&s).unwrap(), wells);

    let tc = taylor_coefficients(&p).unwrap();
    let s = serde_json::to_string(&tc).unwrap();
    assert_eq!(serde_json::from_str::<aqrm::TaylorCoefficients>(&s).unwrap(), tc);

    let report = classify_degeneracy(&p, 4, 1e-3).unwrap();
    let s = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<aqrm::DegeneracyReport>(&s).unwrap(), report);

    let grid: Vec<f64> = (-1300..=1300).map(|i| 0.01 * i as f64).collect();
    let w = ed_wavefunction(&p, 80, 0, &grid).unwrap();
    let s = serde_json::to_string(&w).unwrap();
    assert_eq!(serde_json::from_str::<aqrm::WavefunctionGrid>(&s).unwrap(), w);
}
