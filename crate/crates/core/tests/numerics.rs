mod common;

use common::c;
use hecke_core::numerics::*;
use hecke_core::specfun::theta_constant;
use num_complex::Complex64;
use std::f64::consts::PI;

fn de(order: usize) -> QuadratureSpec {
    QuadratureSpec::new(Scheme::DoubleExponential, order)
}

#[test]
fn half_line_mellin_gaussian() {
    // int_0^inf y^{z-1} e^{-pi y^2} dy = Gamma(z/2) pi^{-z/2} / 2
    for z in [c(1.0, 0.0), c(3.0, 0.7), c(2.2, -0.4)] {
        let e = integrate_1d(|y| (z * y.ln() - PI * y * y).exp() / y, Domain::HalfLine, &de(128)).unwrap();
        let exact = 0.5 * common::arch_l(z);
        assert!((e.value - exact).norm() < 1e-12 * exact.norm(), "{z}");
        assert!(e.error < 1e-8);
    }
}

#[test]
fn interval_endpoint_singularity() {
    let e = integrate_1d(|x| c(1.0 / x.sqrt(), 0.0), Domain::Interval(0.0, 1.0), &de(128)).unwrap();
    assert!((e.value.re - 2.0).abs() < 1e-12);
}

#[test]
fn gauss_legendre_composite_polynomial() {
    let spec = QuadratureSpec::new(Scheme::GaussLegendreComposite, 8).with_subdivisions(4);
    let e = integrate_1d(|x| c(x.powi(9) - 3.0 * x * x, 0.0), Domain::Interval(-1.0, 2.0), &spec).unwrap();
    let exact = (2f64.powi(10) - 1.0) / 10.0 - (8.0 + 1.0);
    assert!((e.value.re - exact).abs() < 1e-12);
}

#[test]
fn refinement_shrinks_error() {
    let f = |y: f64| (c(2.5, 1.0) * y.ln() - PI * y * y).exp() / y;
    let a = integrate_1d(f, Domain::HalfLine, &de(32)).unwrap();
    let b = integrate_1d(f, Domain::HalfLine, &de(32).refined()).unwrap();
    assert!(b.error < a.error);
    assert!((a.value - b.value).norm() <= a.error + 1e-15);
}

#[test]
fn gaussian_tail_matches_theta() {
    let policy = SumPolicy::new(4, TailKind::Gaussian);
    let e = truncated_sum(|n| c((-PI * (n * n) as f64).exp(), 0.0), &policy).unwrap();
    let th = theta_constant(c(0.0, 1.0)).unwrap();
    assert!((e.value - (th - 1.0) / 2.0).norm() < 1e-15);
}

#[test]
fn power_law_tail() {
    let e = truncated_sum(|n| c(1.0 / (n * n) as f64, 0.0), &SumPolicy::new(1000, TailKind::PowerLaw)).unwrap();
    let rest = PI * PI / 6.0 - e.value.re;
    assert!(rest > 0.0 && rest <= e.error * 1.01);
    assert!(truncated_sum(|n| c(1.0 / n as f64, 0.0), &SumPolicy::new(100, TailKind::PowerLaw).with_max_tail(1e-3))
        .is_err());
}

#[test]
fn gauss_hermite_tensor() {
    // int x1^2 x2^2 e^{-pi |x|^2} = (1/(2 pi))^2
    let spec = QuadratureSpec::new(Scheme::GaussHermiteTensor, 12);
    let f = |x: &[f64]| c(x[0] * x[0] * x[1] * x[1] * (-PI * (x[0] * x[0] + x[1] * x[1])).exp(), 0.0);
    let e = integrate_gauss_nd(f, 2, &spec).unwrap();
    assert!((e.value.re - 1.0 / (4.0 * PI * PI)).abs() < 1e-14);
}

#[test]
fn matrix_rule_moments() {
    for sigma in [0.0, 0.5, 1.5, -0.5] {
        let rule = MatrixGaussRule::new(sigma, 8).unwrap();
        let mass = rule.apply(|_| c(1.0, 0.0)).unwrap();
        assert!((mass.re - MatrixGaussRule::total_mass(sigma)).abs() < 1e-12 * mass.re);
        // scaling h -> h / sqrt(lambda) gives int |h|^2 = (sigma + 2) / pi times the mass
        let m2 = rule.apply(|h| c(h.iter().flatten().map(|v| v * v).sum(), 0.0)).unwrap();
        let expect = MatrixGaussRule::total_mass(sigma) * (sigma + 2.0) / PI;
        assert!((m2.re - expect).abs() < 1e-11 * expect, "{sigma}: {} {expect}", m2.re);
    }
}

#[test]
fn matrix_rule_is_orthogonally_invariant() {
    let rule = MatrixGaussRule::new(0.7, 10).unwrap();
    let f = |h: &RealMat2| c((h[0][0] - 0.3 * h[1][1]).powi(2) + h[0][1], 0.0);
    let rot = |h: &RealMat2| {
        let (co, si) = (0.4f64.cos(), 0.4f64.sin());
        [[co * h[0][0] - si * h[1][0], co * h[0][1] - si * h[1][1]], [si * h[0][0] + co * h[1][0], si * h[0][1] + co * h[1][1]]]
    };
    let a = rule.apply(f).unwrap();
    let b = rule.apply(|h| f(&rot(h))).unwrap();
    assert!((a - b).norm() < 1e-12 * a.norm());
}

#[test]
fn parallel_and_ordered_sum_are_deterministic() {
    let v: Vec<Complex64> = exec::map_indexed(1000, |i| c((i as f64).sin(), 1.0 / (1.0 + i as f64)));
    let s1 = exec::ordered_sum(&v);
    let s2 = exec::ordered_sum(&exec::map_indexed(1000, |i| c((i as f64).sin(), 1.0 / (1.0 + i as f64))));
    assert_eq!(s1, s2);
}
