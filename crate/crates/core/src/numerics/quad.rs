//! One-dimensional and small tensor-product quadrature.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::exec::{map_indexed, ordered_sum};
use super::rules::{gauss_hermite_pi, gauss_legendre};
use super::Estimate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    GaussLegendreComposite,
    DoubleExponential,
    GaussHermiteTensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainTransform {
    None,
    /// `y = e^u`, for multiplicative measures on the half line.
    LogRadial,
    /// Rational map of a bounded parameter onto an unbounded domain.
    WholeLine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Interval(f64, f64),
    /// (0, inf)
    HalfLine,
    WholeLine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    pub order: usize,
    pub subdivisions: usize,
    pub domain_transform: DomainTransform,
}

impl QuadratureSpec {
    pub fn new(scheme: Scheme, order: usize) -> Self {
        QuadratureSpec {
            scheme,
            order,
            subdivisions: 1,
            domain_transform: DomainTransform::None,
        }
    }

    pub fn with_subdivisions(mut self, subdivisions: usize) -> Self {
        self.subdivisions = subdivisions;
        self
    }

    pub fn with_transform(mut self, transform: DomainTransform) -> Self {
        self.domain_transform = transform;
        self
    }

    /// Same scheme at twice the resolution.
    pub fn refined(&self) -> Self {
        let mut s = *self;
        match s.scheme {
            Scheme::GaussLegendreComposite => s.subdivisions *= 2,
            _ => s.order *= 2,
        }
        s
    }

    fn validate(&self, function: &'static str) -> Result<()> {
        if self.order < 2 {
            return Err(Error::invalid(function, "order must be at least 2"));
        }
        if self.subdivisions == 0 {
            return Err(Error::invalid(function, "subdivisions must be positive"));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::new(Scheme::DoubleExponential, 128)
    }
}

/// Node set on the original variable, weights already include the Jacobian.
fn nodes_1d(domain: Domain, spec: &QuadratureSpec) -> Result<Vec<(f64, f64)>> {
    const F: &str = "integrate_1d";
    match spec.scheme {
        Scheme::DoubleExponential => Ok(de_nodes(domain, spec.order)),
        Scheme::GaussHermiteTensor => match domain {
            Domain::WholeLine => Ok(hermite_nodes(spec.order)),
            _ => Err(Error::invalid(F, "gauss-hermite needs the whole line")),
        },
        Scheme::GaussLegendreComposite => {
            let base = gauss_legendre(spec.order);
            let m = spec.subdivisions;
            // parameter interval, then map
            let (lo, hi, map): (f64, f64, Box<dyn Fn(f64) -> (f64, f64)>) =
                match (domain, spec.domain_transform) {
                    (Domain::Interval(a, b), DomainTransform::None) => {
                        (a, b, Box::new(|t| (t, 1.0)))
                    }
                    (Domain::HalfLine, DomainTransform::LogRadial) => (
                        -1.0,
                        1.0,
                        Box::new(|t: f64| {
                            let d = 1.0 - t * t;
                            let u = t / d;
                            let y = u.exp();
                            (y, y * (1.0 + t * t) / (d * d))
                        }),
                    ),
                    (Domain::HalfLine, DomainTransform::WholeLine) => (
                        0.0,
                        1.0,
                        Box::new(|t: f64| {
                            let d = 1.0 - t;
                            (t / d, 1.0 / (d * d))
                        }),
                    ),
                    (Domain::WholeLine, DomainTransform::WholeLine) => (
                        -1.0,
                        1.0,
                        Box::new(|t: f64| {
                            let d = 1.0 - t * t;
                            (t / d, (1.0 + t * t) / (d * d))
                        }),
                    ),
                    _ => {
                        return Err(Error::invalid(
                            F,
                            "domain transform does not match the domain",
                        ))
                    }
                };
            let h = (hi - lo) / m as f64;
            let mut out = Vec::with_capacity(m * base.len());
            for k in 0..m {
                let a = lo + h * k as f64;
                for (x, w) in base.iter() {
                    let t = a + 0.5 * h * (x + 1.0);
                    let (y, jac) = map(t);
                    out.push((y, 0.5 * h * w * jac));
                }
            }
            Ok(out)
        }
    }
}

fn hermite_nodes(n: usize) -> Vec<(f64, f64)> {
    gauss_hermite_pi(n)
        .iter()
        .map(|(x, w)| (x, w * (PI * x * x).exp()))
        .collect()
}

/// Double-exponential nodes with `order` steps on each side of t = 0.
fn de_nodes(domain: Domain, order: usize) -> Vec<(f64, f64)> {
    let tmax = match domain {
        Domain::Interval(..) => 4.5,
        Domain::HalfLine => 5.5,
        Domain::WholeLine => 5.0,
    };
    let h = tmax / order as f64;
    let mut out = Vec::with_capacity(2 * order + 1);
    for k in -(order as i64)..=(order as i64) {
        let t = h * k as f64;
        let (sh, ch) = (t.sinh(), t.cosh());
        match domain {
            Domain::Interval(a, b) => {
                let r = 0.5 * (b - a);
                let u = FRAC_PI_2 * sh;
                let cu = u.cosh();
                let x = u.tanh();
                // distance to the nearer endpoint, computed without cancellation
                let gap = 1.0 / (u.abs().exp() * cu);
                let y = if x >= 0.0 { b - r * gap } else { a + r * gap };
                if y <= a || y >= b {
                    continue;
                }
                out.push((y, h * r * FRAC_PI_2 * ch / (cu * cu)));
            }
            Domain::HalfLine => {
                let y = (FRAC_PI_2 * sh).exp();
                out.push((y, h * y * FRAC_PI_2 * ch));
            }
            Domain::WholeLine => {
                let u = FRAC_PI_2 * sh;
                out.push((u.sinh(), h * FRAC_PI_2 * ch * u.cosh()));
            }
        }
    }
    out
}

fn weighted_sum<F>(nodes: &[(f64, f64)], f: &F, function: &'static str) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + Sync + Send,
{
    let terms = map_indexed(nodes.len(), |i| {
        let (x, w) = nodes[i];
        if w == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let v = f(x);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::non_finite(function, x));
        }
        Ok(v * w)
    });
    let terms: Vec<Complex64> = terms.into_iter().collect::<Result<_>>()?;
    Ok(ordered_sum(&terms))
}

/// Integrate `f` over `domain`; the error estimate is the difference between
/// the rule at the requested resolution and at half of it.
pub fn integrate_1d<F>(f: F, domain: Domain, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> Complex64 + Sync + Send,
{
    const FN: &str = "integrate_1d";
    spec.validate(FN)?;
    if let Domain::Interval(a, b) = domain {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::invalid(FN, "interval must be finite with a < b"));
        }
    }
    let fine = weighted_sum(&nodes_1d(domain, spec)?, &f, FN)?;
    let coarse_spec = coarsened(spec);
    let coarse = weighted_sum(&nodes_1d(domain, &coarse_spec)?, &f, FN)?;
    Ok(Estimate::new(fine, (fine - coarse).norm()))
}

fn coarsened(spec: &QuadratureSpec) -> QuadratureSpec {
    let mut c = *spec;
    match c.scheme {
        Scheme::GaussLegendreComposite if c.subdivisions >= 2 => c.subdivisions /= 2,
        _ => c.order = (c.order / 2).max(1),
    }
    c
}

/// Tensor-product Gauss-Hermite rule on R^dim (dim <= 4) for integrands that
/// decay like a Gaussian. Other schemes are rejected.
pub fn integrate_gauss_nd<F>(f: F, dim: usize, spec: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(&[f64]) -> Complex64 + Sync + Send,
{
    const FN: &str = "integrate_gauss_nd";
    spec.validate(FN)?;
    if dim == 0 || dim > 4 {
        return Err(Error::invalid(FN, "dimension must be between 1 and 4"));
    }
    if spec.scheme != Scheme::GaussHermiteTensor {
        return Err(Error::invalid(FN, "only the gauss-hermite tensor scheme is supported"));
    }
    let fine = tensor_sum(&f, dim, spec.order)?;
    let coarse = tensor_sum(&f, dim, (spec.order / 2).max(1))?;
    Ok(Estimate::new(fine, (fine - coarse).norm()))
}

fn tensor_sum<F>(f: &F, dim: usize, n: usize) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Complex64 + Sync + Send,
{
    let rule = gauss_hermite_pi(n);
    // log of the weight times exp(pi x^2)
    let lw: Vec<f64> = rule
        .iter()
        .map(|(x, w)| w.ln() + PI * x * x)
        .collect();
    let total = n.pow(dim as u32);
    let terms = map_indexed(total, |idx| {
        let mut x = [0.0f64; 4];
        let mut lwsum = 0.0;
        let mut r = idx;
        for xi in x.iter_mut().take(dim) {
            let j = r % n;
            r /= n;
            *xi = rule.nodes[j];
            lwsum += lw[j];
        }
        let v = f(&x[..dim]);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::non_finite("integrate_gauss_nd", format!("{:?}", &x[..dim])));
        }
        Ok(v * lwsum.exp())
    });
    let terms: Vec<Complex64> = terms.into_iter().collect::<Result<_>>()?;
    Ok(ordered_sum(&terms))
}
