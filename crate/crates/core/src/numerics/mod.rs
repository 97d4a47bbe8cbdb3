//! Deterministic quadrature and truncated-sum engines.

pub mod exec;
mod matrix_rule;
mod quad;
pub mod rules;
mod sum;

use num_complex::Complex64;

pub use matrix_rule::{integrate_mat2, MatrixGaussRule, RealMat2};
pub use quad::{integrate_1d, integrate_gauss_nd, Domain, DomainTransform, QuadratureSpec, Scheme};
pub use sum::{truncated_sum, SumPolicy, TailKind};

/// A value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: Complex64, error: f64) -> Self {
        Estimate { value, error }
    }

    pub fn exact(value: Complex64) -> Self {
        Estimate { value, error: 0.0 }
    }
}
