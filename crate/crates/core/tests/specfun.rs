mod common;

use common::{c, rel};
use hecke_core::specfun::*;
use hecke_core::Precision;
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn zeta_known_values() {
    assert!(rel(riemann_zeta(c(2.0, 0.0)).unwrap(), c(PI * PI / 6.0, 0.0)) < 1e-14);
    assert!(rel(riemann_zeta(c(4.0, 0.0)).unwrap(), c(PI.powi(4) / 90.0, 0.0)) < 1e-14);
    assert!(rel(riemann_zeta(c(3.0, 0.0)).unwrap(), c(1.2020569031595942, 0.0)) < 1e-14);
    assert!(rel(riemann_zeta(c(0.0, 0.0)).unwrap(), c(-0.5, 0.0)) < 1e-14);
    assert!(rel(riemann_zeta(c(-1.0, 0.0)).unwrap(), c(-1.0 / 12.0, 0.0)) < 1e-13);
    assert!(riemann_zeta(c(1.0, 0.0)).is_err());
}

#[test]
fn zeta_matches_independent_sum() {
    for s in [c(1.5, 0.0), c(2.5, 3.0), c(4.0, -1.0), c(1.1, 0.5)] {
        assert!(rel(riemann_zeta(s).unwrap(), common::zeta(s)) < 1e-11, "{s}");
    }
}

#[test]
fn two_zeta_routes_agree() {
    for s in [c(0.5, 14.134725), c(0.3, 2.0), c(-2.5, 1.0), c(7.0, 0.0)] {
        let b = zeta_euler_maclaurin(s).unwrap();
        if s.re >= 0.0 {
            let a = zeta_borwein(s, &Precision::default()).unwrap();
            assert!((a.value - b.value).norm() < 1e-10, "{s}");
        }
        assert!((riemann_zeta(s).unwrap() - b.value).norm() < 1e-10, "{s}");
    }
}

#[test]
fn gamma_matches_stirling_oracle() {
    for z in [c(0.5, 0.0), c(3.7, 2.1), c(0.2, -5.0), c(-2.3, 0.4), c(10.0, 10.0)] {
        assert!(rel(gamma(z).unwrap(), common::gamma(z)) < 1e-12, "{z}");
    }
    assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(PI.sqrt(), 0.0)) < 1e-14);
    assert!(gamma(c(-3.0, 0.0)).is_err());
}

#[test]
fn completed_zeta_at_two() {
    assert!(rel(completed_zeta(c(2.0, 0.0)).unwrap(), c(PI / 6.0, 0.0)) < 1e-14);
}

#[test]
fn functional_equation_points() {
    for s in [c(0.3, 0.0), c(0.6, 0.0), c(0.25, 0.4)] {
        let d = (completed_zeta(s).unwrap() - completed_zeta(1.0 - s).unwrap()).norm();
        assert!(d <= 1e-8, "{s}: {d}");
    }
}

#[test]
fn theta_modularity() {
    for y in [0.25, 0.5, 1.0, 2.0, 4.0] {
        let a = theta_constant(c(0.0, 1.0 / y)).unwrap();
        let b = y.sqrt() * theta_constant(c(0.0, y)).unwrap();
        assert!((a - b).norm() <= 1e-10, "{y}");
    }
    // Theta(0|i) = pi^{1/4} / Gamma(3/4)
    let t = theta_constant(c(0.0, 1.0)).unwrap();
    assert!(rel(t, c(PI.powf(0.25) / common::gamma(c(0.75, 0.0)).re, 0.0)) < 1e-14);
}

#[test]
fn congruence_theta_forms_agree() {
    let p = Precision::default();
    for n in [2u32, 3, 7, 30] {
        let tau = c(0.1, 0.8);
        let a = theta_congruence_direct(n, tau, &p).unwrap();
        let b = theta_congruence_via_level(n, tau, &p).unwrap();
        assert!((a.value - b.value).norm() < 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn completed_zeta_is_symmetric(re in -3.0f64..4.0, im in -20.0f64..20.0) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 0.05 && s.norm() > 0.05);
        let a = completed_zeta(s).unwrap();
        let b = completed_zeta(1.0 - s).unwrap();
        prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()));
    }

    #[test]
    fn theta_inversion(y in 0.05f64..20.0) {
        let a = theta_constant(c(0.0, 1.0 / y)).unwrap();
        let b = y.sqrt() * theta_constant(c(0.0, y)).unwrap();
        prop_assert!((a - b).norm() <= 1e-11 * a.norm());
    }
}
