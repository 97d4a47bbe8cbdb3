//! Product rule on Mat2(R) for the weight `|det h|^sigma exp(-pi Tr h^T h) dh`.
//!
//! Columns are written as `c2 = r (cos phi, sin phi)` and
//! `c1 = p (-sin phi, cos phi) + q (cos phi, sin phi)`, so that `|det h| = |r p|`
//! and `dh = |r| dr dphi dp dq`. The powers of `|r|` and `|p|` go into
//! generalized Gauss-Laguerre weights, which removes the singular factor from
//! the integrand entirely.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::exec::{map_indexed, ordered_sum};
use super::rules::{gauss_hermite_pi, gauss_laguerre};
use super::Estimate;
use crate::error::{Error, Result};
use crate::specfun::ln_gamma_real;

pub type RealMat2 = [[f64; 2]; 2];

#[derive(Debug, Clone)]
pub struct MatrixGaussRule {
    sigma: f64,
    order: usize,
    nodes: Vec<(RealMat2, f64)>,
}

impl MatrixGaussRule {
    /// `order` nodes for r, p and q and `2 * order` angles; needs sigma > -1.
    pub fn new(sigma: f64, order: usize) -> Result<Self> {
        const FN: &str = "MatrixGaussRule::new";
        if !(sigma > -1.0) || !sigma.is_finite() {
            return Err(Error::domain(FN, format!("weight exponent {sigma} must exceed -1")));
        }
        if order < 2 {
            return Err(Error::invalid(FN, "order must be at least 2"));
        }
        let r_rule = gauss_laguerre(order, sigma / 2.0);
        let r_pref = 0.5 * PI.powf(-(sigma + 2.0) / 2.0);
        let p_rule = gauss_laguerre(order, (sigma - 1.0) / 2.0);
        let p_pref = 0.5 * PI.powf(-(sigma + 1.0) / 2.0);
        let q_rule = gauss_hermite_pi(order);
        let n_phi = 2 * order;
        let w_phi = PI / n_phi as f64;

        let mut nodes = Vec::with_capacity(n_phi * 4 * order * order * order);
        for j in 0..n_phi {
            let phi = (j as f64 + 0.5) * w_phi;
            let (s, c) = phi.sin_cos();
            for (u, wu) in r_rule.iter() {
                let r0 = (u / PI).sqrt();
                for r in [r0, -r0] {
                    for (v, wv) in p_rule.iter() {
                        let p0 = (v / PI).sqrt();
                        for p in [p0, -p0] {
                            for (q, wq) in q_rule.iter() {
                                let h = [[-p * s + q * c, r * c], [p * c + q * s, r * s]];
                                let w = w_phi * wu * r_pref * wv * p_pref * wq;
                                nodes.push((h, w));
                            }
                        }
                    }
                }
            }
        }
        Ok(MatrixGaussRule {
            sigma,
            order,
            nodes,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Exact total mass `pi L(sigma + 1) L(sigma + 2)`, with
    /// `L(z) = pi^{-z/2} Gamma(z/2)`.
    pub fn total_mass(sigma: f64) -> f64 {
        let l = |z: f64| (-0.5 * z * PI.ln() + ln_gamma_real(z / 2.0)).exp();
        PI * l(sigma + 1.0) * l(sigma + 2.0)
    }

    /// `sum_k w_k f(h_k)`.
    pub fn apply<F>(&self, f: F) -> Result<Complex64>
    where
        F: Fn(&RealMat2) -> Complex64 + Sync + Send,
    {
        let terms = map_indexed(self.nodes.len(), |i| {
            let (h, w) = &self.nodes[i];
            let v = f(h);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::non_finite("MatrixGaussRule::apply", format!("{h:?}")));
            }
            Ok(v * *w)
        });
        let terms: Vec<Complex64> = terms.into_iter().collect::<Result<_>>()?;
        Ok(ordered_sum(&terms))
    }
}

/// Integrate `|det h|^sigma exp(-pi |h|^2) f(h)` at `order`, with the
/// difference to `order / 2` as error estimate.
pub fn integrate_mat2<F>(f: F, sigma: f64, order: usize) -> Result<Estimate>
where
    F: Fn(&RealMat2) -> Complex64 + Sync + Send,
{
    let fine = MatrixGaussRule::new(sigma, order)?.apply(&f)?;
    let coarse = MatrixGaussRule::new(sigma, (order / 2).max(2))?.apply(&f)?;
    Ok(Estimate::new(fine, (fine - coarse).norm()))
}
