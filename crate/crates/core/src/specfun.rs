//! Complex special functions: Gamma, Riemann zeta with analytic continuation,
//! the completed zeta function, the real Archimedean L-factor and the theta
//! constants used as kernels of the global operators.
//!
//! Every truncated series is summed in ascending index order so results are
//! bit-reproducible across runs and thread counts.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::Estimate;

/// The numeric currency of the crate.
pub type ComplexScalar = Complex64;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Tolerance policy for truncated series.
///
/// A result is only returned when its estimated remainder is at most
/// `max(abs_tol, rel_tol * |partial sum|)`, using at most `max_terms` terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Precision {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            abs_tol: 1e-16,
            rel_tol: 1e-16,
            max_terms: 100_000,
        }
    }
}

impl Precision {
    pub fn new(abs_tol: f64, rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0 && max_terms > 0) {
            return Err(Error::invalid(
                "Precision::new",
                "tolerances must be positive and max_terms nonzero",
            ));
        }
        Ok(Precision {
            abs_tol,
            rel_tol,
            max_terms,
        })
    }

    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * magnitude)
    }
}

fn check_finite(function: &'static str, z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::non_finite(function, z))
    }
}

/// True when `z` is exactly a non-positive integer.
fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `sin(pi z)` with exact reduction of the real part modulo 2.
pub(crate) fn sin_pi(z: Complex64) -> Complex64 {
    let a = z.re - 2.0 * (z.re / 2.0).round();
    let b = PI * z.im;
    Complex64::new((PI * a).sin() * b.cosh(), (PI * a).cos() * b.sinh())
}

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(z)` for `Re z >= 1/2` (principal branch of the Lanczos form).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// Logarithm of the complex Gamma function (not the principal branch of
/// `ln Gamma`, only some branch; `exp` of it is always `Gamma(z)`).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_finite("ln_gamma", z)?;
    if is_nonpositive_integer(z) {
        return Err(Error::pole("gamma", z));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        let s = sin_pi(z);
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
    }
}

/// `ln Gamma(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        (PI / (PI * x).sin()).ln() - ln_gamma_right(Complex64::new(1.0 - x, 0.0)).re
    } else {
        ln_gamma_right(Complex64::new(x, 0.0)).re
    }
}

/// Complex Gamma function.
///
/// Lanczos on the right half-plane, reflection `Gamma(z) Gamma(1-z) = pi / sin(pi z)`
/// for `Re z < 1/2`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    let lg = ln_gamma(z)?;
    if lg.re > 709.0 {
        return Err(Error::Overflow {
            function: "gamma",
            at: z.to_string(),
        });
    }
    Ok(lg.exp())
}

/// `pi^{-s/2} Gamma(s/2)`, the real Archimedean L-factor.
pub fn archimedean_l(s: Complex64) -> Result<Complex64> {
    let half = s / 2.0;
    let lg = ln_gamma(half)?;
    let v = (lg - half * PI.ln()).exp();
    check_finite("archimedean_l", v)?;
    Ok(v)
}

/// Borwein's accelerated alternating series for `zeta`, valid for `Re s > 0`
/// and usable down to `Re s = 0`.
///
/// The error estimate is Borwein's bound
/// `3 (1 + 2|t|) e^{pi |t| / 2} / ((3 + sqrt 8)^n |1 - 2^{1-s}|)`.
pub fn zeta_borwein(s: Complex64, prec: &Precision) -> Result<Estimate> {
    check_finite("zeta_borwein", s)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole("riemann_zeta", s));
    }
    let factor = 1.0 - (Complex64::new(LN_2, 0.0) * (1.0 - s)).exp();
    if factor.norm() < 1e-8 {
        return Err(Error::Precision {
            function: "zeta_borwein",
            estimate: f64::INFINITY,
            target: prec.abs_tol,
        });
    }
    let t = s.im.abs();
    let growth = 3.0 * (1.0 + 2.0 * t) * (PI * t / 2.0).exp() / factor.norm();
    let rate = (3.0 + 8f64.sqrt()).ln();
    let bound = |n: usize| growth * (-rate * n as f64).exp();

    // d_k overflows past n ~ 400.
    let cap = prec.max_terms.min(400);
    let mut n = 16usize;
    loop {
        let value = borwein_sum(s, n, factor);
        let target = prec.target(value.norm());
        let err = bound(n);
        if err <= target {
            return Ok(Estimate::new(value, err));
        }
        let needed = ((growth / target).ln() / rate).ceil() as usize + 1;
        if needed > cap || n >= cap {
            return Err(Error::Precision {
                function: "zeta_borwein",
                estimate: err,
                target,
            });
        }
        n = needed.max(n + 1);
    }
}

fn borwein_sum(s: Complex64, n: usize, factor: Complex64) -> Complex64 {
    let nf = n as f64;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0f64;
    let mut acc = 1.0f64;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, &dk) in d.iter().take(n).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let power = (-s * ((k + 1) as f64).ln()).exp();
        sum += sign * (dk - dn) / dn * power;
    }
    -sum / factor
}

// B_{2k} / (2k)! for k = 1..=15.
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_3e26,
    -23_749_461_029.0 / 870.0 / 3.048_883_446_117_138_6e29,
    8_615_841_276_005.0 / 14_322.0 / 2.652_528_598_121_910_6e32,
];

/// Euler-Maclaurin evaluation of `zeta(s)` on the whole plane minus `s = 1`.
///
/// Independent of the alternating-series route; used as a cross-check.
pub fn zeta_euler_maclaurin(s: Complex64) -> Result<Estimate> {
    check_finite("zeta_euler_maclaurin", s)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole("riemann_zeta", s));
    }
    let cutoff = (s.norm() + 20.0).ceil().max(24.0) as usize;
    let nf = cutoff as f64;
    let ln_n = nf.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..cutoff {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * nf / (s - 1.0) + 0.5 * n_pow;

    // rising factorial s (s+1) ... (s + 2k - 2) times N^{-s-2k+1}
    let mut rising = s;
    let mut npow = n_pow / nf;
    let mut last = Complex64::new(0.0, 0.0);
    for (k, &coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if k > 0 {
            let j = (2 * k) as f64;
            rising *= (s + j - 1.0) * (s + j);
            npow /= nf * nf;
        }
        last = coef * rising * npow;
        sum += last;
    }
    Ok(Estimate::new(sum, last.norm()))
}

/// Riemann zeta function with analytic continuation.
///
/// `Re s >= 0` uses the accelerated alternating series; `Re s < 0` uses the
/// functional equation `zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)`.
pub fn riemann_zeta_with(s: Complex64, prec: &Precision) -> Result<Estimate> {
    check_finite("riemann_zeta", s)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole("riemann_zeta", s));
    }
    if s.re >= 0.0 {
        match zeta_borwein(s, prec) {
            Ok(v) => Ok(v),
            // 1 - 2^{1-s} vanishes off the real axis on Re s = 1.
            Err(Error::Precision { .. }) if (s.re - 1.0).abs() < 1e-6 => {
                zeta_euler_maclaurin(s)
            }
            Err(e) => Err(e),
        }
    } else {
        let mirror = riemann_zeta_with(1.0 - s, prec)?;
        let two = Complex64::new(2.0, 0.0);
        let pref = two.powc(s) * Complex64::new(PI, 0.0).powc(s - 1.0) * sin_pi(s / 2.0)
            * gamma(1.0 - s)?;
        let v = pref * mirror.value;
        check_finite("riemann_zeta", v)?;
        Ok(Estimate::new(v, pref.norm() * mirror.error))
    }
}

pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    riemann_zeta_with(s, &Precision::default()).map(|e| e.value)
}

/// `zeta(s) pi^{-s/2} Gamma(s/2)`; symmetric under `s -> 1 - s`.
pub fn completed_zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(0.0, 0.0) || s == Complex64::new(1.0, 0.0) {
        return Err(Error::pole("completed_zeta", s));
    }
    let z = riemann_zeta(s)?;
    Ok(z * archimedean_l(s)?)
}

/// `Theta(0|tau) = sum_n exp(i pi tau n^2)` by direct symmetric summation.
pub fn theta_constant_with(tau: Complex64, prec: &Precision) -> Result<Estimate> {
    theta_level_with(1, Complex64::new(0.0, 0.0), tau, prec)
}

pub fn theta_constant(tau: Complex64) -> Result<Complex64> {
    theta_constant_with(tau, &Precision::default()).map(|e| e.value)
}

/// Level-k theta function `sum_n exp(i pi k tau n^2 + 2 pi i k n z)`.
///
/// Terms are added in ascending `|n|`; the cutoff comes from the Gaussian tail
/// bound `2 exp(-pi k f(M+1)) / (1 - exp(-pi k D))` with `f(n) = y n^2 - 2|Im z| n`.
pub fn theta_level_with(k: u64, z: Complex64, tau: Complex64, prec: &Precision) -> Result<Estimate> {
    check_finite("theta_level", tau)?;
    check_finite("theta_level", z)?;
    if k == 0 {
        return Err(Error::invalid("theta_level", "level must be positive"));
    }
    if tau.im <= 0.0 {
        return Err(Error::domain("theta_level", format!("Im(tau) = {} <= 0", tau.im)));
    }
    let kf = k as f64;
    let y = tau.im;
    let b = z.im.abs();
    let i_pi = Complex64::new(0.0, PI);
    let term = |n: f64| (i_pi * kf * (tau * n * n + 2.0 * n * z)).exp();

    let mut sum = Complex64::new(1.0, 0.0);
    for m in 0..=prec.max_terms {
        if m > 0 {
            let n = m as f64;
            sum += term(n) + term(-n);
        }
        let next = (m + 1) as f64;
        let step = y * (2.0 * next + 1.0) - 2.0 * b;
        if step > 0.0 && next * y >= b {
            let lead = -PI * kf * (y * next * next - 2.0 * b * next);
            let tail = 2.0 * lead.exp() / (1.0 - (-PI * kf * step).exp());
            if tail <= prec.target(sum.norm()) {
                check_finite("theta_level", sum)?;
                return Ok(Estimate::new(sum, tail));
            }
        }
    }
    Err(Error::Precision {
        function: "theta_level",
        estimate: f64::INFINITY,
        target: prec.abs_tol,
    })
}

pub fn theta_level(k: u64, z: Complex64, tau: Complex64) -> Result<Complex64> {
    theta_level_with(k, z, tau, &Precision::default()).map(|e| e.value)
}

/// `Theta^{(N)}(0|tau) = sum_n exp(i pi tau (1 + N n)^2)` by direct summation.
pub fn theta_congruence_direct(modulus: u32, tau: Complex64, prec: &Precision) -> Result<Estimate> {
    check_finite("theta_congruence", tau)?;
    if modulus < 2 {
        return Err(Error::invalid("theta_congruence", "modulus must exceed 1"));
    }
    if tau.im <= 0.0 {
        return Err(Error::domain("theta_congruence", format!("Im(tau) = {} <= 0", tau.im)));
    }
    let nf = modulus as f64;
    let y = tau.im;
    let i_pi = Complex64::new(0.0, PI);
    let term = |n: f64| {
        let r = 1.0 + nf * n;
        (i_pi * tau * r * r).exp()
    };
    let mut sum = term(0.0);
    for m in 0..=prec.max_terms {
        if m > 0 {
            let n = m as f64;
            sum += term(n) + term(-n);
        }
        let j = (m + 1) as f64;
        let lead = -PI * y * (nf * j - 1.0).powi(2);
        let step = PI * y * nf * (2.0 * nf * j - 2.0 + nf);
        let tail = 2.0 * lead.exp() / (1.0 - (-step).exp());
        if tail <= prec.target(sum.norm()) {
            return Ok(Estimate::new(sum, tail));
        }
    }
    Err(Error::Precision {
        function: "theta_congruence",
        estimate: f64::INFINITY,
        target: prec.abs_tol,
    })
}

/// The same constant written as `e^{i pi tau} Theta_{N^2}(tau / N | tau)`.
pub fn theta_congruence_via_level(modulus: u32, tau: Complex64, prec: &Precision) -> Result<Estimate> {
    if modulus < 2 {
        return Err(Error::invalid("theta_congruence", "modulus must exceed 1"));
    }
    let n = modulus as f64;
    let inner = theta_level_with(modulus as u64 * modulus as u64, tau / n, tau, prec)?;
    let pref = (Complex64::new(0.0, PI) * tau).exp();
    Ok(Estimate::new(pref * inner.value, pref.norm() * inner.error))
}

/// `Theta^{(N)}(0|tau)`; evaluates both forms and fails if they disagree.
pub fn theta_congruence_with(modulus: u32, tau: Complex64, prec: &Precision) -> Result<Estimate> {
    let direct = theta_congruence_direct(modulus, tau, prec)?;
    let level = theta_congruence_via_level(modulus, tau, prec)?;
    let gap = (direct.value - level.value).norm();
    let allowed = direct.error + level.error + 1e-13 * direct.value.norm().max(1e-300);
    if gap > allowed.max(prec.abs_tol) {
        return Err(Error::Precision {
            function: "theta_congruence",
            estimate: gap,
            target: allowed,
        });
    }
    Ok(direct)
}

pub fn theta_congruence(modulus: u32, tau: Complex64) -> Result<Complex64> {
    theta_congruence_with(modulus, tau, &Precision::default()).map(|e| e.value)
}

/// `Theta(0|i t) - 1` for real `t > 0`, switching to the inverted argument
/// `t^{-1/2} Theta(0|i/t)` below `t = 1` so the sum stays short.
///
/// This is the evaluator behind the global kernels; the identities themselves
/// are checked with [`theta_constant`], which never inverts.
pub fn theta_imag_minus_one(t: f64) -> f64 {
    debug_assert!(t > 0.0);
    let tail_sum = |u: f64| {
        let mut acc = 0.0;
        let mut n = 1.0f64;
        loop {
            let term = (-PI * u * n * n).exp();
            acc += term;
            if term < 1e-18 * acc.max(1e-300) || term == 0.0 {
                break;
            }
            n += 1.0;
        }
        2.0 * acc
    };
    if t >= 1.0 {
        tail_sum(t)
    } else {
        let r = 1.0 / t;
        r.sqrt() * (1.0 + tail_sum(r)) - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma(c(0.5, 0.0)).unwrap().re, PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(c(4.0, 0.0)).unwrap().re, 6.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(c(-0.5, 0.0)).unwrap().re, -2.0 * PI.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn gamma_reflection_cross_check() {
        let z = c(0.3, 0.4);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = PI / sin_pi(z);
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn gamma_poles_and_overflow() {
        assert!(matches!(gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(c(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma(c(200.0, 0.0)), Err(Error::Overflow { .. })));
        assert!(gamma(c(-3.0, 1e-9)).is_ok());
    }

    #[test]
    fn gamma_large_argument() {
        // Gamma(50) = 49!
        let fact49 = (1..50).fold(1.0f64, |a, k| a * k as f64);
        assert_relative_eq!(gamma(c(50.0, 0.0)).unwrap().re, fact49, max_relative = 1e-12);
    }

    #[test]
    fn zeta_known_values() {
        assert_relative_eq!(riemann_zeta(c(2.0, 0.0)).unwrap().re, PI * PI / 6.0, max_relative = 1e-13);
        assert_relative_eq!(riemann_zeta(c(3.0, 0.0)).unwrap().re, 1.202_056_903_159_594_2, max_relative = 1e-13);
        assert_relative_eq!(riemann_zeta(c(0.0, 0.0)).unwrap().re, -0.5, epsilon = 1e-13);
        assert_relative_eq!(riemann_zeta(c(-1.0, 0.0)).unwrap().re, -1.0 / 12.0, epsilon = 1e-13);
        assert!(riemann_zeta(c(-2.0, 0.0)).unwrap().norm() < 1e-13);
        assert_relative_eq!(riemann_zeta(c(60.0, 0.0)).unwrap().re, 1.0, epsilon = 1e-16);
    }

    #[test]
    fn zeta_pole() {
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(completed_zeta(c(0.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn zeta_on_the_line_re_one() {
        // 1 - 2^{1-s} vanishes here; falls back to Euler-Maclaurin.
        let s = c(1.0, 2.0 * PI / LN_2);
        let v = riemann_zeta(s).unwrap();
        let em = zeta_euler_maclaurin(s).unwrap().value;
        assert!((v - em).norm() < 1e-12);
    }

    #[test]
    fn borwein_budget_exhaustion() {
        let tight = Precision::new(1e-16, 1e-16, 20).unwrap();
        assert!(matches!(zeta_borwein(c(0.5, 40.0), &tight), Err(Error::Precision { .. })));
    }

    #[test]
    fn completed_zeta_values() {
        assert_relative_eq!(completed_zeta(c(2.0, 0.0)).unwrap().re, PI / 6.0, max_relative = 1e-13);
        let a = completed_zeta(c(0.3, 0.0)).unwrap();
        let b = completed_zeta(c(0.7, 0.0)).unwrap();
        assert!((a - b).norm() < 1e-12);
        let three = completed_zeta(c(3.0, 0.0)).unwrap();
        let parts = 1.202_056_903_159_594_2 * PI.powf(-1.5) * gamma(c(1.5, 0.0)).unwrap().re;
        assert_relative_eq!(three.re, parts, max_relative = 1e-13);
    }

    #[test]
    fn archimedean_factor_values() {
        assert_relative_eq!(archimedean_l(c(1.0, 0.0)).unwrap().re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(archimedean_l(c(2.0, 0.0)).unwrap().re, 1.0 / PI, max_relative = 1e-14);
        assert_relative_eq!(archimedean_l(c(4.0, 0.0)).unwrap().re, PI.powi(-2), max_relative = 1e-14);
        assert!(archimedean_l(c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn theta_values() {
        // 1 + 2 sum exp(-pi n^2), summed by hand to n = 6
        let direct: f64 = 1.0 + 2.0 * (1..7).map(|n| (-PI * (n * n) as f64).exp()).sum::<f64>();
        assert_relative_eq!(theta_constant(c(0.0, 1.0)).unwrap().re, direct, max_relative = 1e-15);
        assert_relative_eq!(direct, 1.086_434_811_213_308, max_relative = 1e-15);
        let big = theta_constant(c(0.0, 6.0)).unwrap().re;
        assert_relative_eq!(big, 1.0 + 2.0 * (-6.0 * PI).exp(), max_relative = 1e-15);
        let q = theta_constant(c(0.0, 0.25)).unwrap();
        let p = theta_constant(c(0.0, 4.0)).unwrap();
        assert!((q - 2.0 * p).norm() < 1e-12);
        assert!(matches!(theta_constant(c(0.3, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn theta_level_collapses() {
        let t1 = theta_constant(c(0.0, 1.0)).unwrap();
        let t2 = theta_constant(c(0.0, 2.0)).unwrap();
        assert!((theta_level(1, c(0.0, 0.0), c(0.0, 1.0)).unwrap() - t1).norm() < 1e-15);
        assert!((theta_level(2, c(0.0, 0.0), c(0.0, 1.0)).unwrap() - t2).norm() < 1e-15);
        assert!((theta_level(1, c(1.0, 0.0), c(0.0, 1.0)).unwrap() - t1).norm() < 1e-14);
    }

    #[test]
    fn theta_congruence_forms_agree() {
        let tau = c(0.0, 1.0);
        let direct = theta_congruence_direct(3, tau, &Precision::default()).unwrap().value;
        let level = (Complex64::new(0.0, PI) * tau).exp() * theta_level(9, tau / 3.0, tau).unwrap();
        assert!((direct - level).norm() < 1e-12);
        let brute: f64 = (-20i32..=20)
            .map(|n| (-2.0 * PI * (1.0 + 2.0 * n as f64).powi(2)).exp())
            .sum();
        assert_relative_eq!(theta_congruence(2, c(0.0, 2.0)).unwrap().re, brute, max_relative = 1e-14);
        let huge = theta_congruence(100_000, tau).unwrap().re;
        assert_relative_eq!(huge, (-PI).exp(), max_relative = 1e-15);
        assert!(theta_congruence(1, tau).is_err());
    }

    #[test]
    fn theta_imag_minus_one_matches_direct() {
        for &t in &[0.05, 0.3, 0.99, 1.0, 2.5] {
            let direct = theta_constant_with(c(0.0, t), &Precision::default()).unwrap().value.re - 1.0;
            assert_relative_eq!(theta_imag_minus_one(t), direct, max_relative = 1e-12);
        }
    }
}
