#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Stirling series after a shift by 10.
pub fn gamma(z: Complex64) -> Complex64 {
    let mut shift = c(0.0, 0.0);
    let mut z = z;
    for _ in 0..10 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv * (1.0 / 12.0 + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0))));
    ((z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift).exp()
}

pub fn arch_l(s: Complex64) -> Complex64 {
    (-s / 2.0 * PI.ln()).exp() * gamma(s / 2.0)
}

/// Direct sum plus Euler-Maclaurin tail, Re s > 1.
pub fn zeta(s: Complex64) -> Complex64 {
    let n = 50.0f64;
    let mut acc = c(0.0, 0.0);
    for k in 1..50 {
        acc += (-s * (k as f64).ln()).exp();
    }
    let nps = (-s * n.ln()).exp();
    acc + nps * n / (s - 1.0) + 0.5 * nps + s * nps / (12.0 * n) - s * (s + 1.0) * (s + 2.0) * nps / (720.0 * n.powi(3))
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
