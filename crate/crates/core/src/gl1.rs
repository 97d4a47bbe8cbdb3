//! Hecke-Baxter operators on GL1: lattice scalings, the Archimedean Gaussian
//! kernel, the global theta kernel and its congruence variant.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{integrate_1d, truncated_sum, Domain, Estimate, QuadratureSpec, SumPolicy};
use crate::specfun::{theta_congruence_with, theta_constant, theta_imag_minus_one, Precision};

/// Nonzero real coordinate on GL1(R).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GL1Point(f64);

impl GL1Point {
    pub fn new(x: f64) -> Result<Self> {
        if x == 0.0 || !x.is_finite() {
            return Err(Error::domain("GL1Point", format!("x = {x} is not a finite nonzero real")));
        }
        Ok(GL1Point(x))
    }

    pub fn x(self) -> f64 {
        self.0
    }

    pub fn inverse(self) -> Self {
        GL1Point(1.0 / self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GL1SpectralParam {
    pub gamma: Complex64,
}

impl GL1SpectralParam {
    pub fn new(gamma: Complex64) -> Self {
        GL1SpectralParam { gamma }
    }

    pub fn real(gamma: f64) -> Self {
        GL1SpectralParam {
            gamma: Complex64::new(gamma, 0.0),
        }
    }
}

/// Reduced positive fraction p/q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PositiveRational {
    p: u64,
    q: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PositiveRational {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::domain("PositiveRational", "numerator and denominator must be positive"));
        }
        let g = gcd(p, q);
        Ok(PositiveRational { p: p / g, q: q / g })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn numer(self) -> u64 {
        self.p
    }

    pub fn denom(self) -> u64 {
        self.q
    }

    pub fn value(self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// Exact product; `None` on u64 overflow.
    pub fn checked_mul(self, other: Self) -> Option<Self> {
        let g1 = gcd(self.p, other.q);
        let g2 = gcd(other.p, self.q);
        let p = (self.p / g1).checked_mul(other.p / g2)?;
        let q = (self.q / g2).checked_mul(other.q / g1)?;
        Some(PositiveRational { p, q })
    }
}

/// `psi_gamma(x) = |x|^{i gamma}`.
pub fn psi(gamma: GL1SpectralParam, x: GL1Point) -> Complex64 {
    (Complex64::new(0.0, 1.0) * gamma.gamma * x.0.abs().ln()).exp()
}

/// `(T_{p/q} f)(x) = f(p/q x)`.
pub fn hecke_scale<F: Fn(f64) -> Complex64>(pq: PositiveRational, f: F, x: GL1Point) -> Complex64 {
    f(pq.p as f64 * x.0 / pq.q as f64)
}

/// `sum_{n <= H} n^{-s} f(n x)`, tail extrapolated per the policy.
pub fn q_gl1_z_apply<F>(s: Complex64, f: F, x: GL1Point, policy: &SumPolicy) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64 + Sync + Send,
{
    let x = x.0;
    truncated_sum(
        |n| {
            let nf = n as f64;
            (-s * nf.ln()).exp() * f(nf * x)
        },
        policy,
    )
}

/// `|y|^s exp(-pi y^2)`.
pub fn archimedean_kernel(s: Complex64, x: GL1Point) -> Complex64 {
    let y = x.0.abs();
    (s * y.ln() - PI * y * y).exp()
}

/// `1/2 |y|^s (Theta(0|i y^2) - 1)`.
pub fn global_kernel(s: Complex64, x: GL1Point) -> Complex64 {
    let y = x.0.abs();
    0.5 * (s * y.ln()).exp() * theta_imag_minus_one(y * y)
}

/// Convolution of `f` with a radial kernel against dy/|y| on R*.
fn convolve_radial<K, F>(kernel: K, f: F, x: GL1Point, spec: &QuadratureSpec) -> Result<Estimate>
where
    K: Fn(f64) -> Complex64 + Sync + Send,
    F: Fn(f64) -> Complex64 + Sync + Send,
{
    let x = x.0;
    integrate_1d(
        |y| {
            let k = kernel(y);
            if k == Complex64::new(0.0, 0.0) {
                return k;
            }
            k * (f(x / y) + f(-x / y)) / y
        },
        Domain::HalfLine,
        spec,
    )
}

/// Archimedean operator `int_{R*} dy/|y| |y|^s e^{-pi y^2} f(x/y)`.
pub fn q_gl1_r_apply<F>(s: Complex64, f: F, x: GL1Point, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64 + Sync + Send,
{
    if s.re <= 0.0 {
        return Err(Error::domain("q_gl1_r_apply", format!("Re(s) = {} <= 0", s.re)));
    }
    convolve_radial(|y| (s * y.ln() - PI * y * y).exp(), f, x, spec)
}

/// Global operator with kernel `1/2 |y|^s (Theta(0|i y^2) - 1)`.
pub fn q_gl1_global_apply<F>(s: Complex64, f: F, x: GL1Point, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64 + Sync + Send,
{
    if s.re <= 1.0 {
        return Err(Error::domain("q_gl1_global_apply", format!("Re(s) = {} <= 1", s.re)));
    }
    convolve_radial(
        |y| 0.5 * (s * y.ln()).exp() * theta_imag_minus_one(y * y),
        f,
        x,
        spec,
    )
}

/// Level-N kernel `1/2 |x|^s Theta^{(N)}(0 | i x^2)`.
pub fn q_gl1_congruence_kernel(s: Complex64, modulus: u32, x: GL1Point) -> Result<Complex64> {
    let y = x.0.abs();
    let theta = theta_congruence_with(modulus, Complex64::new(0.0, y * y), &Precision::default())?;
    Ok(0.5 * (s * y.ln()).exp() * theta.value)
}

/// `ln |2 Qhat_{s,N}(x) - |x|^s e^{-pi x^2}|`, i.e. the log of the `n != 0`
/// part of the level-N theta sum. Computed in log space because the gap
/// underflows long before N = 100.
pub fn congruence_gap_ln(s: Complex64, modulus: u32, x: GL1Point) -> Result<f64> {
    if modulus < 2 {
        return Err(Error::invalid("congruence_gap_ln", "modulus must exceed 1"));
    }
    let y2 = x.0 * x.0;
    let nn = modulus as f64;
    let expo = |n: f64| -PI * y2 * (1.0 + n * nn).powi(2);
    // n = -1 dominates
    let lead = expo(-1.0);
    let mut rel = 0.0f64;
    for k in 1..10_000i64 {
        let a = (expo(-(k as f64)) - lead).exp();
        let b = (expo(k as f64) - lead).exp();
        rel += a + b;
        if a + b < 1e-18 * rel {
            break;
        }
    }
    Ok(s.re * x.0.abs().ln() + lead + rel.ln())
}

/// Residual of the kernel functional equation
/// `Qhat_{1-s}(1/x) + 1/2 |1/x|^{1-s} = Qhat_s(x) + 1/2 |x|^s`, with both
/// thetas summed directly.
pub fn check_fr2(s: Complex64, x: GL1Point) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    let side = |s: Complex64, y: f64| {
        let th = theta_constant(Complex64::new(0.0, y * y))
            .expect("theta constant is defined on the upper half plane");
        let pw = (s * y.abs().ln()).exp();
        0.5 * pw * (th - one) + 0.5 * pw
    };
    let xv = x.0;
    (side(one - s, 1.0 / xv) - side(s, xv)).norm()
}
