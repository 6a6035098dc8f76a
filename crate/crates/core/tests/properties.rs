use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use wellpol::conventional_sum::{calibrate_c, infinite_well_alpha};
use wellpol::dalgarno_lewis::{
    alpha1_prime, alpha_prime, alpha_via_quadrature, breakdown, infinite_well_alpha_prime, orthogonality,
    overlap_with_psi0, PhiReduced, SecondDerivative,
};
use wellpol::limits::infinite_well_limit;
use wellpol::GroundState;

fn gamma_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| (0.1 + 0.39 * (i as f64 + 0.5) / n as f64) * PI)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transcendental_residuals_from_strength(r in 0.05f64..200.0) {
        let s = GroundState::from_strength(r).unwrap();
        prop_assert!(s.gamma0 > 0.0 && s.gamma0 < FRAC_PI_2);
        prop_assert!(s.matching_residual().abs() <= 1e-10, "{:e}", s.matching_residual());
        prop_assert!(s.strength_residual().abs() <= 1e-10, "{:e}", s.strength_residual());
        prop_assert!((s.inner_log_slope() - s.outer_log_slope()).abs() <= 1e-10);
    }

    #[test]
    fn phi_is_odd(frac in 0.05f64..0.499, x in 0.0f64..6.0) {
        let phi = PhiReduced::new(GroundState::from_gamma(frac * PI).unwrap());
        prop_assert_eq!(phi.eval(-x), -phi.eval(x));
    }

    #[test]
    fn outer_residual_vanishes(frac in 0.1f64..0.49, x in 1.01f64..4.0) {
        let phi = PhiReduced::new(GroundState::from_gamma(frac * PI).unwrap());
        prop_assert!(phi.ode_residual_outer(x, SecondDerivative::Analytic).unwrap().abs() <= 1e-9);
        prop_assert!(phi.ode_residual_outer(-x, SecondDerivative::Analytic).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn inner_residual_vanishes(frac in 0.1f64..0.49, x in -0.999f64..0.999) {
        let phi = PhiReduced::new(GroundState::from_gamma(frac * PI).unwrap());
        prop_assert!(phi.ode_residual_inner(x, SecondDerivative::Analytic).unwrap().abs() <= 1e-9);
        prop_assert!(phi.chi_residual(x, SecondDerivative::Analytic).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn calibration_is_inverse_of_evaluation(c in -5.0f64..5.0) {
        prop_assert!((calibrate_c(infinite_well_alpha_prime(c)).unwrap() - c).abs() <= 1e-10);
    }

    #[test]
    fn t_ratio_ignores_normalization(frac in 0.1f64..0.49, scale in 0.1f64..10.0) {
        let s = GroundState::from_gamma(frac * PI).unwrap();
        let scaled = GroundState { n_prime_sq: s.n_prime_sq * scale, ..s };
        let a = PhiReduced::new(s).t_ratio().unwrap();
        let b = PhiReduced::new(scaled).t_ratio().unwrap();
        prop_assert!((a - b).abs() <= 1e-14 * a.abs());
    }

    #[test]
    fn polarizability_positive(frac in 0.02f64..0.499) {
        let s = GroundState::from_gamma(frac * PI).unwrap();
        prop_assert!(alpha1_prime(&s) > 0.0);
        prop_assert!(alpha_prime(&s) > 0.0);
    }
}

#[test]
fn strength_round_trip_on_gamma_grid() {
    for i in 1..=100 {
        let g = i as f64 / 101.0 * (FRAC_PI_2 - 1e-3);
        let s = GroundState::from_gamma(g).unwrap();
        let back = GroundState::from_strength(s.strength).unwrap();
        assert!((back.gamma0 - g).abs() <= 1e-10, "gamma0 = {g}: {}", back.gamma0);
    }
}

#[test]
fn normalization_integral() {
    for frac in [0.15, 0.39, 0.49] {
        let s = GroundState::from_gamma(frac * PI).unwrap();
        let norm = overlap_with_psi0(&s, |x| s.psi0(x)).unwrap();
        assert!((norm - 1.0).abs() <= 1e-9, "{frac}pi: {norm}");
    }
}

#[test]
fn orthogonality_on_gamma_grid() {
    for g in gamma_grid(50) {
        let phi = PhiReduced::new(GroundState::from_gamma(g).unwrap());
        let o = orthogonality(&phi).unwrap();
        assert!(o.abs() <= 1e-10, "gamma0 = {g}: {o:e}");
    }
}

/// Worst Richardson-difference residual over 20 points per region. The
/// outer step follows the decay length `1 / beta0`.
fn worst_fd_residual(phi: &PhiReduced) -> f64 {
    let inner_step = 8e-3;
    let fi = SecondDerivative::RichardsonDifference { step: inner_step };
    let fo = SecondDerivative::RichardsonDifference { step: (0.03 / phi.state().beta0).min(inner_step) };
    let mut worst = 0.0f64;
    for i in 0..20 {
        let t = (i as f64 + 0.5) / 20.0;
        let inner = -0.99 + 1.98 * t;
        let outer = 1.01 + 2.0 * t;
        for r in [
            phi.ode_residual_inner(inner, fi).unwrap(),
            phi.chi_residual(inner, fi).unwrap(),
            phi.ode_residual_outer(outer, fo).unwrap(),
            phi.ode_residual_outer(-outer, fo).unwrap(),
        ] {
            worst = worst.max(r.abs());
        }
    }
    worst
}

#[test]
fn finite_difference_residuals_twenty_points_per_region() {
    for k in 20..=49 {
        let phi = PhiReduced::new(GroundState::from_gamma(k as f64 / 100.0 * PI).unwrap());
        let r = worst_fd_residual(&phi);
        assert!(r <= 1e-9, "0.{k}pi: {r:e}");
    }
}

#[test]
fn finite_difference_residuals_shallow_wells() {
    // |phi'| grows like 1/gamma0^2 here and rounding in the difference
    // quotient grows with it, so the bound is taken relative to that scale
    for k in [10, 12, 15, 17, 19] {
        let phi = PhiReduced::new(GroundState::from_gamma(k as f64 / 100.0 * PI).unwrap());
        let scale = (0..=300).map(|i| phi.eval(i as f64 * 0.01).abs()).fold(1.0, f64::max);
        let r = worst_fd_residual(&phi);
        assert!(r <= 1e-9 * scale, "0.{k}pi: {r:e} (scale {scale})");
    }
}

#[test]
fn residual_probe_detects_perturbed_coefficient() {
    let s = GroundState::from_gamma(0.39 * PI).unwrap();
    let (g, b) = (s.gamma0, s.beta0);
    let perturbed = |x: f64| g.cos() * (-b * (x - 1.0)).exp() * (1.01 * x * x / b + x / (b * b));
    let x = 1.5;
    let h = 1e-3;
    let d2 = |h: f64| (perturbed(x + h) - 2.0 * perturbed(x) + perturbed(x - h)) / (h * h);
    let d2 = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
    let residual = d2 - b * b * perturbed(x) + 4.0 * x * s.psi0_shape(x);
    assert!(residual.abs() > 1e-3, "{residual:e}");
}

#[test]
fn monotone_in_strength_across_both_tables() {
    // decreasing gamma0 means decreasing R
    let mut prev = 0.0;
    for k in (15..=49).rev() {
        let a = alpha_prime(&GroundState::from_gamma(k as f64 / 100.0 * PI).unwrap());
        assert!(a > prev, "alpha' not increasing as R decreases at {k}");
        prev = a;
    }
}

#[test]
fn quadrature_agrees_with_closed_form_on_grid() {
    for g in gamma_grid(50) {
        let s = GroundState::from_gamma(g).unwrap();
        let b = breakdown(&s);
        let q = alpha_via_quadrature(&s).unwrap();
        assert!((q.total() - b.alpha_prime).abs() <= 1e-8 * b.alpha_prime);
        assert!((q.outer() - b.alpha1_prime).abs() <= 1e-8 * b.alpha_prime);
    }
}

#[test]
fn conventional_partial_sums_increase() {
    let sums: Vec<f64> = (1..=30).map(|n| infinite_well_alpha(n).unwrap().partial_alpha_prime).collect();
    assert!(sums.windows(2).all(|w| w[1] > w[0]));
    assert!(sums.iter().all(|s| *s < 0.0703));
}

#[test]
fn halved_offset_lies_between_coarse_and_limit() {
    // convergence is monotone, so f(eps/2) sits between f(eps) and the limit
    let eps = [1e-3, 5e-4, 2.5e-4, 1.25e-4];
    let lim = infinite_well_limit(&eps).unwrap();
    for series in [(&lim.alpha2, lim.alpha2_limit), (&lim.alpha2_t, lim.alpha2_t_limit)] {
        let (values, limit) = series;
        for w in values.windows(2) {
            let (coarse, fine) = (w[0], w[1]);
            assert!((fine - limit).abs() < (coarse - limit).abs());
            assert!((fine - coarse) * (limit - fine) >= 0.0);
        }
    }
}
