mod common;

use common::{c, rel};
use hecke_core::gl1::*;
use hecke_core::numerics::{QuadratureSpec, SumPolicy, TailKind};
use proptest::prelude::*;

fn pt(x: f64) -> GL1Point {
    GL1Point::new(x).unwrap()
}

#[test]
fn archimedean_eigenvalues() {
    let spec = QuadratureSpec::default();
    for (s, g) in [(3.0, 0.0), (3.0, 0.7), (2.2, -0.4)] {
        let (s, gm) = (c(s, 0.0), GL1SpectralParam::real(g));
        for x in [0.7, -1.9] {
            let out = q_gl1_r_apply(s, |y| psi(gm, pt(y)), pt(x), &spec).unwrap();
            let expect = common::arch_l(s - c(0.0, g)) * psi(gm, pt(x));
            assert!(rel(out.value, expect) <= 1e-6, "{s} {g} {x}");
        }
    }
}

#[test]
fn global_eigenvalues() {
    let spec = QuadratureSpec::default();
    for (s, g) in [(3.0, 0.0), (3.0, 0.7), (2.2, -0.4)] {
        let (s, gm) = (c(s, 0.0), GL1SpectralParam::real(g));
        let out = q_gl1_global_apply(s, |y| psi(gm, pt(y)), pt(1.3), &spec).unwrap();
        let expect = common::completed_zeta(s - c(0.0, g)) * psi(gm, pt(1.3));
        assert!(rel(out.value, expect) <= 1e-6, "{s} {g}");
    }
}

#[test]
fn discrete_operator_is_zeta() {
    let gm = GL1SpectralParam::real(0.3);
    let s = c(3.0, 0.0);
    let out = q_gl1_z_apply(s, |y| psi(gm, pt(y)), pt(0.8), &SumPolicy::new(20_000, TailKind::PowerLaw)).unwrap();
    let expect = common::zeta(s - c(0.0, 0.3)) * psi(gm, pt(0.8));
    assert!(rel(out.value, expect) < 1e-8);
}

#[test]
fn fr2_grid() {
    for i in 0..5 {
        for j in 0..5 {
            let s = c(0.2 + 0.15 * i as f64, 0.0);
            let x = 0.5 + 0.375 * j as f64;
            assert!(check_fr2(s, pt(x)) <= 1e-10);
        }
    }
}

#[test]
fn congruence_gap_decreases() {
    let s = c(2.0, 0.0);
    let sup = |n: u32| {
        (0..=30)
            .map(|k| congruence_gap_ln(s, n, pt(0.5 + 1.5 * k as f64 / 30.0)).unwrap())
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let v: Vec<f64> = [3, 10, 30, 100].iter().map(|&n| sup(n)).collect();
    assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
    // small N: compare the log gap with the directly summed kernels
    let x = pt(0.9);
    let direct = 2.0 * q_gl1_congruence_kernel(s, 3, x).unwrap() - archimedean_kernel(s, x);
    assert!((direct.norm().ln() - congruence_gap_ln(s, 3, x).unwrap()).abs() < 1e-9);
}

#[test]
fn rationals_reduce() {
    let r = PositiveRational::new(6, 4).unwrap();
    assert_eq!((r.numer(), r.denom()), (3, 2));
    assert!(PositiveRational::new(0, 4).is_err());
    let f = |y: f64| c(y, 0.0);
    assert_eq!(hecke_scale(r, f, pt(2.0)), c(3.0, 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fr2_holds_on_strip(s in 0.05f64..0.95, t in -3.0f64..3.0, x in 0.2f64..5.0) {
        prop_assert!(check_fr2(c(s, t), pt(x)) <= 1e-9);
    }

    #[test]
    fn hecke_scaling_composes(p in 1u64..50, q in 1u64..50, x in 0.1f64..10.0) {
        let r = PositiveRational::new(p, q).unwrap();
        let gm = GL1SpectralParam::real(0.8);
        let lhs = hecke_scale(r, |y| psi(gm, pt(y)), pt(x));
        let rhs = psi(gm, pt(r.value())) * psi(gm, pt(x));
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }
}
