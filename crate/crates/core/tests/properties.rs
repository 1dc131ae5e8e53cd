use std::f64::consts::{PI, TAU};

use cylosc_core::angle::circular_distance;
use cylosc_core::grid::{default_l_range, periodic_phi_axis, uniform_axis};
use cylosc_core::jumps::{jump_point, jump_time};
use cylosc_core::states::{
    coherent_state, default_cutoff, density, evolved_state, expectation_l, expectation_u,
    fourier_coefficients, oracle_density, oracle_expectation_u,
};
use cylosc_core::theta::{theta2, theta3};
use cylosc_core::{CoherentParams, CylinderPoint, DensityGrid, OscillatorConfig, ThetaInput, Tolerance};
use num_complex::Complex64;
use proptest::prelude::*;

const GOLDEN: f64 = 1.618_033_988_749_895;

fn taus() -> impl Strategy<Value = Complex64> {
    prop_oneof![
        Just(Complex64::new(0.0, 1.0 / TAU)),
        Just(Complex64::new(0.0, 1.0 / PI)),
        (0.0..50.0f64).prop_map(|t| Complex64::new(-t / TAU, 1.0 / TAU)),
    ]
}

fn args() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn th3(v: Complex64, tau: Complex64) -> Complex64 {
    theta3(ThetaInput::new(v, tau).unwrap(), &Tolerance::default()).unwrap()
}

fn th2(v: Complex64, tau: Complex64) -> Complex64 {
    theta2(ThetaInput::new(v, tau).unwrap(), &Tolerance::default()).unwrap()
}

// Σ|terms| of the series at (v, τ): θ₃(i·Im v | i·Im τ) bounds both θ₂ and θ₃ sums.
fn term_mass(v: Complex64, tau: Complex64) -> f64 {
    th3(Complex64::new(0.0, v.im.abs()), Complex64::new(0.0, tau.im)).re
        + th2(Complex64::new(0.0, v.im.abs()), Complex64::new(0.0, tau.im)).re
}

// Truncation error plus f64 rounding on a sum with the given term mass.
fn slack(mass: f64) -> f64 {
    2.0 * Tolerance::DEFAULT_ABS_TOL + 1e-14 * mass
}

proptest! {
    #[test]
    fn theta3_unit_period(v in args(), tau in taus()) {
        let (a, b) = (th3(v, tau), th3(v + 1.0, tau));
        prop_assert!((a - b).norm() <= slack(term_mass(v, tau)));
    }

    #[test]
    fn theta2_period_and_antiperiod(v in args(), tau in taus()) {
        let a = th2(v, tau);
        let m = term_mass(v, tau);
        prop_assert!((a - th2(v + 2.0, tau)).norm() <= slack(m));
        prop_assert!((a + th2(v + 1.0, tau)).norm() <= slack(m));
    }

    #[test]
    fn theta3_tau_period(v in args(), tau in taus()) {
        let a = th3(v, tau);
        prop_assert!((a - th3(v, tau + 2.0)).norm() <= slack(term_mass(v, tau)));
    }

    #[test]
    fn theta3_quasi_period(v in (-1.0..1.0f64, -0.5..0.5f64), tau in taus()) {
        let v = Complex64::new(v.0, v.1);
        let factor = (Complex64::new(0.0, -PI) * tau - Complex64::new(0.0, TAU) * v).exp();
        let lhs = th3(v + tau, tau);
        let rhs = factor * th3(v, tau);
        let tol = Tolerance::DEFAULT_ABS_TOL * (1.0 + factor.norm())
            + 1e-14 * (term_mass(v + tau, tau) + factor.norm() * term_mass(v, tau));
        prop_assert!((lhs - rhs).norm() <= tol, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn theta3_conjugation(v in args(), tau in taus()) {
        let a = th3(v.conj(), -tau.conj());
        let b = th3(v, tau).conj();
        prop_assert!((a - b).norm() <= slack(term_mass(v, tau)));
    }

    #[test]
    fn halving_tolerance_is_stable(v in args(), tau in taus(), tol_exp in 4..13i32) {
        let loose = Tolerance::default().with_abs_tol(10f64.powi(-tol_exp)).unwrap();
        let tight = loose.with_abs_tol(loose.abs_tol() / 2.0).unwrap();
        let a = theta3(ThetaInput::new(v, tau).unwrap(), &loose).unwrap();
        let b = theta3(ThetaInput::new(v, tau).unwrap(), &tight).unwrap();
        let m = term_mass(v, tau);
        prop_assert!((a - b).norm() <= loose.abs_tol() + 1e-14 * m);
        let a = theta2(ThetaInput::new(v, tau).unwrap(), &loose).unwrap();
        let b = theta2(ThetaInput::new(v, tau).unwrap(), &tight).unwrap();
        prop_assert!((a - b).norm() <= loose.abs_tol() + 1e-14 * m);
    }
}

fn omegas() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(1.62), Just(GOLDEN)]
}

fn params() -> impl Strategy<Value = CoherentParams> {
    (-3.0..=3.0f64, 0.0..TAU, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(j, a, q, p)| CoherentParams::new(j, a, q, p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn density_matches_fourier_oracle(
        params in params(), omega in omegas(),
        phi in 0.0..TAU, dl in -3.0..3.0f64, t in 0.0..30.0f64,
    ) {
        let cfg = OscillatorConfig::new(omega).unwrap();
        let tol = Tolerance::default();
        let state = fourier_coefficients(&params, &cfg, default_cutoff(params.j()), &tol).unwrap();
        let at = CylinderPoint::new(phi, expectation_l(&params, &cfg, t) + dl).unwrap();
        let a = density(&params, &cfg, &at, t, &tol).unwrap();
        let b = oracle_density(&state, &at, t);
        prop_assert!((a - b).abs() < 1e-10, "{} vs {}", a, b);
    }

    #[test]
    fn expectation_u_matches_fourier_oracle(params in params(), t in 0.0..(4.0 * PI)) {
        let cfg = OscillatorConfig::new(1.0).unwrap();
        let tol = Tolerance::default();
        let state = fourier_coefficients(&params, &cfg, default_cutoff(params.j()), &tol).unwrap();
        let a = expectation_u(&params, t, &tol).unwrap();
        let b = oracle_expectation_u(&state, t);
        prop_assert!((a - b).norm() < 1e-12, "{} vs {}", a, b);
        prop_assert!(a.norm() <= 1.0);
    }

    #[test]
    fn initial_phase_is_alpha(params in params()) {
        let u = expectation_u(&params, 0.0, &Tolerance::default()).unwrap();
        prop_assert!(circular_distance(u.arg(), params.alpha()) < 1e-12);
    }

    #[test]
    fn evolution_starts_at_coherent_state(
        params in params(), omega in omegas(), phi in 0.0..TAU, l in -3.0..3.0f64,
    ) {
        let cfg = OscillatorConfig::new(omega).unwrap();
        let tol = Tolerance::default();
        let at = CylinderPoint::new(phi, l).unwrap();
        let a = coherent_state(&params, &cfg, &at, &tol).unwrap();
        let b = evolved_state(&params, &cfg, &at, 0.0, &tol).unwrap();
        prop_assert!((a - b).norm() < 1e-13 * a.norm().max(1.0));
    }

    #[test]
    fn density_is_normalized_at_any_time(params in params(), omega in omegas(), t in 0.0..40.0f64) {
        let cfg = OscillatorConfig::new(omega).unwrap();
        let (lo, hi) = default_l_range(&params, &cfg);
        let g = DensityGrid::evaluate(
            &params, &cfg, t, periodic_phi_axis(48), uniform_axis(lo, hi, 161),
            &Tolerance::default(), 1e-6,
        ).unwrap();
        prop_assert!(g.check_normalization().is_ok(), "{}", g.integral());
        prop_assert!((g.mean_l() - expectation_l(&params, &cfg, t)).abs() < 1e-8);
    }
}

#[test]
fn jump_limits_converge_as_eps_shrinks() {
    let params = CoherentParams::new(1.0, 0.75 * PI, -0.7, 0.2).unwrap();
    let cfg = OscillatorConfig::new(GOLDEN).unwrap();
    let tol = Tolerance::default();
    for k in [0, 1, 7, 42] {
        let pts: Vec<_> = [1e-4, 1e-6, 1e-8]
            .iter()
            .map(|&eps| jump_point(&params, &cfg, k, eps, &tol).unwrap())
            .collect();
        let gaps: Vec<f64> = pts.iter().map(|p| (p.delta_phi.abs() - PI).abs()).collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
        for w in pts.windows(2) {
            assert!(circular_distance(w[0].phi_minus, w[1].phi_minus) < 1e-3);
            assert!(circular_distance(w[0].phi_plus, w[1].phi_plus) < 1e-3);
        }
        // l at t* is the mean meridian position.
        assert_eq!(pts[0].l, expectation_l(&params, &cfg, jump_time(k)));
    }
}

#[test]
fn jump_maps_point_to_antipode() {
    let params = CoherentParams::new(2.0, 1.2, 0.3, -0.5).unwrap();
    let cfg = OscillatorConfig::new(1.0).unwrap();
    for k in 0..6 {
        let p = jump_point(&params, &cfg, k, 1e-6, &Tolerance::default()).unwrap();
        let before = CylinderPoint::new(p.phi_minus, p.l).unwrap().embed();
        let after = CylinderPoint::new(p.phi_plus, p.l).unwrap().embed();
        assert!((before[0] + after[0]).abs() < 1e-5 && (before[1] + after[1]).abs() < 1e-5);
        assert_eq!(before[2], after[2]);
    }
}

#[test]
fn quasiperiodic_trajectory_does_not_repeat() {
    let params = CoherentParams::new(1.0, 0.75 * PI, -0.7, 0.2).unwrap();
    let cfg = OscillatorConfig::new(GOLDEN).unwrap();
    let tol = Tolerance::default();
    let ts: Vec<f64> = (0..4000).map(|i| f64::from(i) * 0.05).collect();
    let tr = cylosc_core::states::mean_trajectory(&params, &cfg, &ts, &tol).unwrap();
    let first = tr[0];
    // Every later sample differs from the start in φ or l.
    assert!(tr[1..]
        .iter()
        .all(|s| circular_distance(s.phi, first.phi) > 1e-9 || (s.l - first.l).abs() > 1e-9));
}
