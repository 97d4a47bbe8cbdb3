//! Classical Gaussian rules, computed by Newton iteration on the three-term
//! recurrences.

use std::f64::consts::PI;

use crate::specfun::ln_gamma_real;

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Gauss-Legendre on [-1, 1].
pub fn gauss_legendre(n: usize) -> Rule {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0f64, 0.0f64);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

/// Gauss-Hermite for the weight `exp(-x^2)` on the real line.
pub fn gauss_hermite(n: usize) -> Rule {
    assert!(n >= 1);
    const PIM4: f64 = 0.751_125_544_464_942_5;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let m = n.div_ceil(2);
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (PIM4, 0.0f64);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-14 * z1.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    // ascending order
    x.reverse();
    w.reverse();
    Rule {
        nodes: x,
        weights: w,
    }
}

/// Gauss-Hermite rescaled to the weight `exp(-pi x^2)`.
pub fn gauss_hermite_pi(n: usize) -> Rule {
    let base = gauss_hermite(n);
    let s = PI.sqrt();
    Rule {
        nodes: base.nodes.iter().map(|x| x / s).collect(),
        weights: base.weights.iter().map(|w| w / s).collect(),
    }
}

/// Generalized Gauss-Laguerre for the weight `x^alpha exp(-x)` on (0, inf).
pub fn gauss_laguerre(n: usize, alpha: f64) -> Rule {
    assert!(n >= 1 && alpha > -1.0);
    let nf = n as f64;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z = 0.0f64;
    let ln_ratio = ln_gamma_real(alpha + nf) - ln_gamma_real(nf);
    for i in 0..n {
        z = match i {
            0 => (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * nf + 1.8 * alpha),
            1 => z + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                    * (z - x[i - 2])
                    / (1.0 + 0.3 * alpha)
            }
        };
        let mut pp = 1.0;
        let mut p2 = 0.0;
        for _ in 0..200 {
            let mut p1 = 1.0f64;
            p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0 + alpha - z) * p2 - (jf + alpha) * p3) / (jf + 1.0);
            }
            pp = (nf * p1 - (nf + alpha) * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-14 * z1.abs() {
                break;
            }
        }
        x[i] = z;
        w[i] = -ln_ratio.exp() / (pp * nf * p2);
    }
    Rule {
        nodes: x,
        weights: w,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_integrates_polynomials() {
        let r = gauss_legendre(7);
        let s: f64 = r.iter().map(|(x, w)| w * x.powi(12)).sum();
        assert_relative_eq!(s, 2.0 / 13.0, max_relative = 1e-14);
        let total: f64 = r.weights.iter().sum();
        assert_relative_eq!(total, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn hermite_moments() {
        for n in [1usize, 2, 5, 20, 64] {
            let r = gauss_hermite(n);
            let m0: f64 = r.weights.iter().sum();
            assert_relative_eq!(m0, PI.sqrt(), max_relative = 1e-13);
            if n >= 2 {
                let m2: f64 = r.iter().map(|(x, w)| w * x * x).sum();
                assert_relative_eq!(m2, PI.sqrt() / 2.0, max_relative = 1e-12);
            }
        }
        let r = gauss_hermite_pi(10);
        let m: f64 = r.iter().map(|(x, w)| w * x.powi(4)).sum();
        // int x^4 exp(-pi x^2) = 3 / (4 pi^2)
        assert_relative_eq!(m, 3.0 / (4.0 * PI * PI), max_relative = 1e-12);
    }

    #[test]
    fn laguerre_moments() {
        for &alpha in &[-0.75, -0.25, 0.0, 0.5, 1.75, 3.0] {
            for n in [4usize, 12, 32] {
                let r = gauss_laguerre(n, alpha);
                for k in 0..4 {
                    let m: f64 = r.iter().map(|(x, w)| w * x.powi(k)).sum();
                    let exact = ln_gamma_real(alpha + 1.0 + k as f64).exp();
                    assert_relative_eq!(m, exact, max_relative = 1e-11);
                }
            }
        }
    }
}
