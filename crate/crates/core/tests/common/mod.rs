#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Stirling series after shifting by 10; independent of the library's Lanczos.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    let mut z = z;
    for _ in 0..10 {
        shift += z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            + inv2 * (-1.0 / 360.0 + inv2 * (1.0 / 1260.0 + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0)))));
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// `pi^{-s/2} Gamma(s/2)`
pub fn arch_l(s: Complex64) -> Complex64 {
    (-s / 2.0 * PI.ln()).exp() * gamma(s / 2.0)
}

/// Direct sum to N plus Euler-Maclaurin tail, for Re s > 1.
pub fn zeta(s: Complex64) -> Complex64 {
    let n = 40.0f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..40 {
        acc += (-s * (k as f64).ln()).exp();
    }
    let nps = (-s * n.ln()).exp();
    acc + nps * n / (s - 1.0) + 0.5 * nps + s * nps / (12.0 * n)
        - s * (s + 1.0) * (s + 2.0) * nps / (720.0 * n.powi(3))
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * nps / (30240.0 * n.powi(5))
}

pub fn completed_zeta(s: Complex64) -> Complex64 {
    arch_l(s) * zeta(s)
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn sigma_k(n: u64, k: u32) -> u64 {
    divisors(n).iter().map(|d| d.pow(k)).sum()
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
