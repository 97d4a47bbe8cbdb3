//! Truncated series with an a-posteriori tail estimate.

use num_complex::Complex64;

use super::exec::{map_indexed, ordered_sum};
use super::Estimate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailKind {
    /// |a_n| ~ C r^n
    Geometric,
    /// |a_n| ~ C n^{-p}, p > 1
    PowerLaw,
    /// |a_n| ~ C exp(-b n^2)
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumPolicy {
    pub height: u64,
    pub tail_bound_kind: TailKind,
    /// Fail with a precision error when the tail estimate is larger.
    pub max_tail: f64,
}

impl SumPolicy {
    pub fn new(height: u64, tail_bound_kind: TailKind) -> Self {
        SumPolicy {
            height,
            tail_bound_kind,
            max_tail: f64::INFINITY,
        }
    }

    pub fn with_max_tail(mut self, max_tail: f64) -> Self {
        self.max_tail = max_tail;
        self
    }
}

/// `sum_{n=1}^{height} term(n)` in increasing n, with the tail beyond `height`
/// extrapolated from the last terms according to `tail_bound_kind`.
pub fn truncated_sum<F>(term: F, policy: &SumPolicy) -> Result<Estimate>
where
    F: Fn(u64) -> Complex64 + Sync + Send,
{
    const FN: &str = "truncated_sum";
    let h = policy.height;
    if h < 2 {
        return Err(Error::invalid(FN, "height must be at least 2"));
    }
    let terms = map_indexed(h as usize, |i| term(i as u64 + 1));
    if let Some(i) = terms.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::non_finite(FN, i + 1));
    }
    let value = ordered_sum(&terms);
    let last = terms[h as usize - 1].norm();
    let tail = if last == 0.0 {
        0.0
    } else {
        match policy.tail_bound_kind {
            TailKind::Geometric => {
                let prev = terms[h as usize - 2].norm();
                let r = last / prev;
                if r < 1.0 {
                    last * r / (1.0 - r)
                } else {
                    f64::INFINITY
                }
            }
            TailKind::PowerLaw => {
                let mid = terms[h as usize / 2 - 1].norm();
                let hf = h as f64;
                let p = (mid / last).ln() / (hf / (h / 2) as f64).ln();
                if p > 1.0 {
                    last * hf / (p - 1.0)
                } else {
                    f64::INFINITY
                }
            }
            TailKind::Gaussian => {
                let prev = terms[h as usize - 2].norm();
                let hf = h as f64;
                let b = (prev / last).ln() / (2.0 * hf - 1.0);
                if b > 0.0 {
                    last * (-b * (2.0 * hf + 1.0)).exp() / (1.0 - (-2.0 * b * hf).exp())
                } else {
                    f64::INFINITY
                }
            }
        }
    };
    if tail > policy.max_tail || tail.is_nan() {
        return Err(Error::Precision {
            function: FN,
            estimate: tail,
            target: policy.max_tail,
        });
    }
    Ok(Estimate::new(value, tail))
}
