//! Principal series of GL2(R), Iwasawa coordinates and the Eisenstein series
//! `Phi(tau, t) = t^{i(g1+g2)/2} sum_{(m,n) primitive, mod +-} y^w / |m + n tau|^{2w}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gl2_arith::{gcd, IntMat2};
use crate::numerics::exec::{map_indexed, ordered_sum};
use crate::numerics::rules::gauss_legendre;
use crate::numerics::{Estimate, RealMat2};
use crate::specfun::{ln_gamma, riemann_zeta};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParamGL2 {
    pub gamma1: Complex64,
    pub gamma2: Complex64,
}

impl SpectralParamGL2 {
    pub fn new(gamma1: Complex64, gamma2: Complex64) -> Self {
        SpectralParamGL2 { gamma1, gamma2 }
    }

    /// `delta = i (gamma2 - gamma1)`
    pub fn delta(&self) -> Complex64 {
        I * (self.gamma2 - self.gamma1)
    }

    /// `w = (delta + 1) / 2`
    pub fn w(&self) -> Complex64 {
        (self.delta() + 1.0) / 2.0
    }

    /// Character exponents `i gamma_j - rho_j` with `rho = (1/2, -1/2)`.
    pub fn character_weights(&self) -> (Complex64, Complex64) {
        (I * self.gamma1 - 0.5, I * self.gamma2 + 0.5)
    }

    /// `(-gamma1, -gamma2)`
    pub fn negated(&self) -> Self {
        SpectralParamGL2::new(-self.gamma1, -self.gamma2)
    }

    fn require_convergent(&self, function: &'static str) -> Result<()> {
        if self.delta().re <= 1.0 {
            return Err(Error::domain(
                function,
                format!("Re(delta) = {} <= 1, the lattice sum diverges", self.delta().re),
            ));
        }
        Ok(())
    }
}

/// Real 2x2 matrix `(a b; c d)` with nonzero determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupElement2 {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let g = GroupElement2 { a, b, c, d };
        let det = g.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::domain("GroupElement2", "matrix is singular or not finite"));
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        GroupElement2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn from_int(m: &IntMat2) -> Self {
        GroupElement2 {
            a: m.a as f64,
            b: m.b as f64,
            c: m.c as f64,
            d: m.d as f64,
        }
    }

    pub fn from_array(m: &RealMat2) -> Result<Self> {
        Self::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn to_array(&self) -> RealMat2 {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &GroupElement2) -> GroupElement2 {
        GroupElement2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> GroupElement2 {
        let det = self.det();
        GroupElement2 {
            a: self.d / det,
            b: -self.b / det,
            c: -self.c / det,
            d: self.a / det,
        }
    }

    pub fn transpose(&self) -> GroupElement2 {
        GroupElement2 { a: self.a, b: self.c, c: self.b, d: self.d }
    }

    /// Rotation by theta composed with the reflection `diag(1, -1)` when
    /// `reflect` is set.
    pub fn orthogonal(theta: f64, reflect: bool) -> Self {
        let (s, c) = theta.sin_cos();
        let e = if reflect { -1.0 } else { 1.0 };
        GroupElement2 { a: c, b: -s * e, c: s, d: c * e }
    }

    /// `g g^T`
    pub fn gram(&self) -> [f64; 3] {
        [
            self.a * self.a + self.b * self.b,
            self.a * self.c + self.b * self.d,
            self.c * self.c + self.d * self.d,
        ]
    }
}

/// Iwasawa coordinates `(x, y, t)`, `tau = x + iy` in the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaPoint {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl IwasawaPoint {
    pub fn new(x: f64, y: f64, t: f64) -> Result<Self> {
        if !(y > 0.0 && t > 0.0) || !x.is_finite() || !y.is_finite() || !t.is_finite() {
            return Err(Error::domain("IwasawaPoint", "need finite x and y, t > 0"));
        }
        Ok(IwasawaPoint { x, y, t })
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// `g(x, y, t) = t^{1/2} y^{-1/2} (y x; 0 1)`
    pub fn section(&self) -> GroupElement2 {
        let c = (self.t / self.y).sqrt();
        GroupElement2 {
            a: c * self.y,
            b: c * self.x,
            c: 0.0,
            d: c,
        }
    }
}

/// `g . x = (b + x d) / (a + x c)`
pub fn moebius_action(g: &GroupElement2, x: f64) -> Result<f64> {
    let den = g.a + x * g.c;
    if den == 0.0 {
        return Err(Error::pole("moebius_action", x));
    }
    Ok((g.b + x * g.d) / den)
}

/// `(pi_gamma(g) f)(x) = |det g|^{i g2 + 1/2} |a + x c|^{i(g1 - g2) - 1} f(g . x)`
pub fn principal_series_apply<F>(gamma: SpectralParamGL2, g: &GroupElement2, f: F, x: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let den = g.a + x * g.c;
    if den == 0.0 {
        return Err(Error::pole("principal_series_apply", x));
    }
    let gx = (g.b + x * g.d) / den;
    let e_det = I * gamma.gamma2 + 0.5;
    let e_den = I * (gamma.gamma1 - gamma.gamma2) - 1.0;
    Ok((e_det * g.det().abs().ln() + e_den * den.abs().ln()).exp() * f(gx))
}

/// `(1 + x^2)^{(i(g1 - g2) - 1)/2}`
pub fn spherical_vector(gamma: SpectralParamGL2, x: f64) -> Complex64 {
    let e = (I * (gamma.gamma1 - gamma.gamma2) - 1.0) / 2.0;
    (e * (1.0 + x * x).ln()).exp()
}

/// `t = |det g|`, `y = t / M22`, `x = M12 / M22` with `M = g g^T`.
pub fn iwasawa_coords(g: &GroupElement2) -> Result<IwasawaPoint> {
    let t = g.det().abs();
    if t == 0.0 || !t.is_finite() {
        return Err(Error::domain("iwasawa_coords", "singular matrix"));
    }
    let [_, m12, m22] = g.gram();
    IwasawaPoint::new(m12 / m22, t / m22, t)
}

/// `(a + b tau) / (c + d tau)` for an integer matrix. For `kn - ml = 1` with
/// rows `(k l; m n)` the imaginary part is `-y / |m + n tau|^2`, so this is not
/// the action induced on the upper half plane; see [`Generator::act`].
pub fn fractional_action(m: &IntMat2, tau: Complex64) -> Complex64 {
    (m.a as f64 + m.b as f64 * tau) / (m.c as f64 + m.d as f64 * tau)
}

/// Generators used for invariance checks, acting on g from the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `(0 1; 1 0)`
    S,
    /// `(1 1; 0 1)`
    T,
    /// `(-1 0; 0 1)`
    R,
}

impl Generator {
    pub fn matrix(self) -> IntMat2 {
        match self {
            Generator::S => IntMat2::new(0, 1, 1, 0),
            Generator::T => IntMat2::T,
            Generator::R => IntMat2::new(-1, 0, 0, 1),
        }
    }

    /// Image of `(tau, t)` under left multiplication of the section.
    pub fn act(self, p: &IwasawaPoint) -> Result<IwasawaPoint> {
        let m = GroupElement2::from_int(&self.matrix());
        iwasawa_coords(&m.mul(&p.section()))
    }
}

/// `q^{-w}` for q > 0, with a real fast path.
#[derive(Debug, Clone, Copy)]
struct NegPower {
    w: Complex64,
}

impl NegPower {
    #[inline]
    fn eval(&self, q: f64) -> Complex64 {
        if self.w.im == 0.0 {
            Complex64::new(q.powf(-self.w.re), 0.0)
        } else {
            (-self.w * q.ln()).exp()
        }
    }
}

/// `int_0^pi M(theta)^{2w-2} dtheta` with
/// `M = max(|cos - (x/y) sin|, sin / y)`; the box-sum tail is
/// `y^{w-1} K^{2-2w} / (2w - 2) * J`.
fn box_tail_angle_integral(x: f64, y: f64, w: Complex64) -> Complex64 {
    let mut cuts = vec![0.0, PI];
    for c in [x - 1.0, x, x + 1.0] {
        cuts.push(y.atan2(c));
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let rule = gauss_legendre(24);
    let e = 2.0 * w - 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for win in cuts.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        if hi - lo <= 0.0 {
            continue;
        }
        for (u, wt) in rule.iter() {
            let th = 0.5 * (lo + hi) + 0.5 * (hi - lo) * u;
            let (s, c) = th.sin_cos();
            let m = (c - x / y * s).abs().max(s / y);
            acc += 0.5 * (hi - lo) * wt * (e * m.ln()).exp();
        }
    }
    acc
}

/// Continuum approximation of the half-lattice sum outside the box of
/// half-width `k`.
fn box_tail(p: &IwasawaPoint, w: Complex64, k: f64) -> Complex64 {
    let j = box_tail_angle_integral(p.x, p.y, w);
    ((w - 1.0) * p.y.ln() + (2.0 - 2.0 * w) * k.ln()).exp() / (2.0 * w - 2.0) * j
}

fn tail_bound(p: &IwasawaPoint, w: Complex64, h: u64) -> f64 {
    box_tail(p, Complex64::new(w.re, 0.0), h as f64 - 0.5).norm()
}

/// Per-ring sums of `y^w |m + n tau|^{-2w}` over the half lattice, ring k
/// being `max(|m|, |n|) = k`. Returns (all vectors, primitive vectors).
fn ring_sums(p: &IwasawaPoint, w: Complex64, h: u64) -> (Vec<Complex64>, Vec<Complex64>) {
    let pw = NegPower { w };
    let yw = (w * p.y.ln()).exp();
    let h = h as i64;
    // row n contributes to several rings; collect per row, then scatter in order
    let rows = map_indexed(h as usize + 1, |n| {
        let n = n as i64;
        let mut all = vec![Complex64::new(0.0, 0.0); h as usize + 1];
        let mut prim = vec![Complex64::new(0.0, 0.0); h as usize + 1];
        let (m_lo, m_hi) = if n == 0 { (1, h) } else { (-h, h) };
        let nx = n as f64 * p.x;
        let ny2 = (n as f64 * p.y).powi(2);
        for m in m_lo..=m_hi {
            let u = m as f64 + nx;
            let v = pw.eval(u * u + ny2);
            let ring = m.abs().max(n) as usize;
            all[ring] += v;
            if gcd(m, n) == 1 {
                prim[ring] += v;
            }
        }
        (all, prim)
    });
    let mut all = vec![Complex64::new(0.0, 0.0); h as usize + 1];
    let mut prim = vec![Complex64::new(0.0, 0.0); h as usize + 1];
    for (ra, rp) in rows {
        for k in 0..=h as usize {
            all[k] += ra[k];
            prim[k] += rp[k];
        }
    }
    for k in 0..=h as usize {
        all[k] *= yw;
        prim[k] *= yw;
    }
    (all, prim)
}

fn t_prefactor(gamma: &SpectralParamGL2, t: f64) -> Complex64 {
    (I * (gamma.gamma1 + gamma.gamma2) / 2.0 * t.ln()).exp()
}

/// Box-truncated coprime sum, `max(|m|, |n|) <= H`, with a tail bound.
pub fn eisenstein(gamma: SpectralParamGL2, p: &IwasawaPoint, h: u64) -> Result<Estimate> {
    gamma.require_convergent("eisenstein")?;
    if h == 0 {
        return Err(Error::invalid("eisenstein", "height must be positive"));
    }
    let w = gamma.w();
    let (_, prim) = ring_sums(p, w, h);
    let pre = t_prefactor(&gamma, p.t);
    Ok(Estimate::new(pre * ordered_sum(&prim), tail_bound(p, w, h)))
}

/// Box-truncated sum over all nonzero vectors mod +-; tends to
/// `zeta(2w)` times the coprime sum.
pub fn eisenstein_full(gamma: SpectralParamGL2, p: &IwasawaPoint, h: u64) -> Result<Estimate> {
    gamma.require_convergent("eisenstein_full")?;
    if h == 0 {
        return Err(Error::invalid("eisenstein_full", "height must be positive"));
    }
    let w = gamma.w();
    let (all, _) = ring_sums(p, w, h);
    let pre = t_prefactor(&gamma, p.t);
    Ok(Estimate::new(pre * ordered_sum(&all), tail_bound(p, w, h)))
}

/// Tail-corrected limits of the two box sums at height H:
/// `(coprime, full)`. The full limit adds the continuum tail outside the box;
/// the coprime limit is rebuilt from the truncated coprime sum by Moebius
/// inversion over the ring sums. Errors compare against the same construction
/// at H/2.
pub fn eisenstein_limits(gamma: SpectralParamGL2, p: &IwasawaPoint, h: u64) -> Result<(Estimate, Estimate)> {
    gamma.require_convergent("eisenstein_limits")?;
    if h < 4 {
        return Err(Error::invalid("eisenstein_limits", "height must be at least 4"));
    }
    let w = gamma.w();
    let zeta_2w = riemann_zeta(2.0 * w)?;
    let (all, prim) = ring_sums(p, w, h);
    let mu = moebius_table(h as usize);
    let limits_at = |k: usize| -> (Complex64, Complex64) {
        let mut f_partial = vec![Complex64::new(0.0, 0.0); k + 1];
        for j in 1..=k {
            f_partial[j] = f_partial[j - 1] + all[j];
        }
        let f_inf = f_partial[k] + box_tail(p, w, k as f64 + 0.5);
        let c_k = ordered_sum(&prim[..=k]);
        let mut corr = Complex64::new(0.0, 0.0);
        let mut mu_sum = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            if mu[j] == 0 {
                continue;
            }
            let kw = (-2.0 * w * (j as f64).ln()).exp() * mu[j] as f64;
            corr += kw * (f_inf - f_partial[k / j]);
            mu_sum += kw;
        }
        let c_inf = c_k + corr + f_inf * (1.0 / zeta_2w - mu_sum);
        (c_inf, f_inf)
    };
    let (c1, f1) = limits_at(h as usize);
    let (c0, f0) = limits_at(h as usize / 2);
    let pre = t_prefactor(&gamma, p.t);
    Ok((
        Estimate::new(pre * c1, (pre * (c1 - c0)).norm()),
        Estimate::new(pre * f1, (pre * (f1 - f0)).norm()),
    ))
}

fn moebius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    let mut is_comp = vec![false; n + 1];
    mu[0] = 0;
    for p in 2..=n {
        if !is_comp[p] {
            for q in (p..=n).step_by(p) {
                if q > p {
                    is_comp[q] = true;
                }
                mu[q] = -mu[q];
            }
            let pp = p.saturating_mul(p);
            for q in (pp..=n).step_by(pp.max(1)) {
                mu[q] = 0;
            }
        }
    }
    mu
}

/// Row-by-row definition on the matrix, `|det g|^{i g2 + 1/2} sum |v g|^{-2w}`
/// over primitive row vectors `v = (n, m)` mod +-, box-truncated at H.
pub fn eisenstein_on_g(gamma: SpectralParamGL2, g: &GroupElement2, h: u64) -> Result<Estimate> {
    gamma.require_convergent("eisenstein_on_g")?;
    if h == 0 {
        return Err(Error::invalid("eisenstein_on_g", "height must be positive"));
    }
    let w = gamma.w();
    let pw = NegPower { w };
    let hh = h as i64;
    let rows = map_indexed(h as usize + 1, |n| {
        let n = n as i64;
        let (m_lo, m_hi) = if n == 0 { (1, 1) } else { (-hh, hh) };
        let mut acc = Complex64::new(0.0, 0.0);
        for m in m_lo..=m_hi {
            if gcd(m, n) != 1 {
                continue;
            }
            let (nf, mf) = (n as f64, m as f64);
            let u = nf * g.a + mf * g.c;
            let v = nf * g.b + mf * g.d;
            acc += pw.eval(u * u + v * v);
        }
        acc
    });
    let pre = ((I * gamma.gamma2 + 0.5) * g.det().abs().ln()).exp();
    let p = iwasawa_coords(g)?;
    Ok(Estimate::new(pre * ordered_sum(&rows), tail_bound(&p, w, h)))
}

/// `|Phi(gen (tau, t)) - Phi(tau, t)|` with both sides box-truncated at H.
pub fn invariance_residual(gamma: SpectralParamGL2, p: &IwasawaPoint, generator: Generator, h: u64) -> Result<f64> {
    let q = generator.act(p)?;
    let a = eisenstein(gamma, &q, h)?;
    let b = eisenstein(gamma, p, h)?;
    Ok((a.value - b.value).norm())
}

/// Reduce tau into the standard fundamental domain of SL2(Z).
pub fn reduce_tau(tau: Complex64) -> Complex64 {
    let mut z = tau;
    for _ in 0..200 {
        z.re -= z.re.round();
        let n2 = z.norm_sqr();
        if n2 < 1.0 - 1e-14 {
            z = -1.0 / z;
        } else {
            break;
        }
    }
    z
}

/// `sum_m ((m + a)^2 + c^2)^{-w}` for Re w > 1/2.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LatticeRow {
    w: Complex64,
    pw: NegPower,
    integral: Complex64,
}

impl LatticeRow {
    pub(crate) fn new(w: Complex64) -> Result<Self> {
        // int_R (u^2 + 1)^{-w} du = sqrt(pi) Gamma(w - 1/2) / Gamma(w)
        let integral = PI.sqrt() * (ln_gamma(w - 0.5)? - ln_gamma(w)?).exp();
        Ok(LatticeRow { w, pw: NegPower { w }, integral })
    }

    /// `sqrt(pi) Gamma(w - 1/2) / Gamma(w)`
    pub(crate) fn integral_coefficient(&self) -> Complex64 {
        self.integral
    }

    pub(crate) fn sum(&self, a: f64, c: f64) -> Complex64 {
        if c >= EXACT_ROW_LIMIT {
            ((1.0 - 2.0 * self.w) * c.ln()).exp() * self.integral
        } else {
            self.direct(a, c)
        }
    }

    fn direct(&self, a: f64, c: f64) -> Complex64 {
        let pw = &self.pw;
        let l = (2.0 * c + 12.0).ceil();
        let m_hi = (l - a).floor() as i64;
        let m_lo = (-l - a).ceil() as i64;
        let c2 = c * c;
        let mut s = Complex64::new(0.0, 0.0);
        for m in m_lo..=m_hi {
            let u = m as f64 + a;
            s += pw.eval(u * u + c2);
        }
        let a_r = m_hi as f64 + 0.5 + a;
        let a_l = -(m_lo as f64 - 0.5 + a);
        s + self.end_tail(a_r, c) + self.end_tail(a_l, c)
    }

    /// `sum_{k >= 0} f(A + 1/2 + k)` for `f(u) = (u^2 + c^2)^{-w}`, A > 2c,
    /// via the midpoint Euler-Maclaurin formula.
    fn end_tail(&self, big_a: f64, c: f64) -> Complex64 {
        let w = self.w;
        let pw = &self.pw;
        let r = (c / big_a).powi(2);
        let mut coef = Complex64::new(1.0, 0.0);
        let mut rk = 1.0;
        let mut integral = Complex64::new(0.0, 0.0);
        let base = ((1.0 - 2.0 * w) * big_a.ln()).exp();
        for k in 0..60 {
            let term = coef * rk / (2.0 * w + 2.0 * k as f64 - 1.0);
            integral += term;
            if term.norm() < 1e-18 * integral.norm() {
                break;
            }
            coef *= (-w - k as f64) / (k as f64 + 1.0);
            rk *= r;
        }
        integral *= base;
        let q = big_a * big_a + c * c;
        // f'(A) = -2 w A q^{-w-1}
        let fp = -2.0 * w * big_a * pw.eval(q) / q;
        // f'''(A)
        let q2 = q * q;
        let fppp = pw.eval(q) / q2 / q
            * (-4.0 * w * (w + 1.0) * (2.0 * (w + 2.0) * big_a.powi(3) - 3.0 * big_a * q));
        integral + fp / 24.0 - 7.0 * fppp / 5760.0
    }

}

/// Full-precision evaluator for the series, meant for quadrature loops.
///
/// Works on the reduced tau. The m-direction of each lattice row is summed
/// directly with an Euler-Maclaurin end correction while `n y < 6.5`; beyond
/// that a row equals its integral to double precision, and the remaining rows
/// are summed in closed form with `zeta(2w - 1)`.
#[derive(Debug, Clone)]
pub struct EisensteinSeries {
    gamma: SpectralParamGL2,
    w: Complex64,
    zeta_2w: Complex64,
    zeta_2w_1: Complex64,
    row: LatticeRow,
}

const EXACT_ROW_LIMIT: f64 = 6.5;

impl EisensteinSeries {
    pub fn new(gamma: SpectralParamGL2) -> Result<Self> {
        gamma.require_convergent("EisensteinSeries")?;
        let w = gamma.w();
        let zeta_2w = riemann_zeta(2.0 * w)?;
        let zeta_2w_1 = riemann_zeta(2.0 * w - 1.0)?;
        let row = LatticeRow::new(w)?;
        Ok(EisensteinSeries { gamma, w, zeta_2w, zeta_2w_1, row })
    }

    pub fn gamma(&self) -> SpectralParamGL2 {
        self.gamma
    }

    /// Sum over all nonzero vectors mod +- of `y^w |m + n tau|^{-2w}`.
    pub fn full_sum(&self, tau: Complex64) -> Complex64 {
        let z = reduce_tau(tau);
        let (x, y) = (z.re, z.im);
        let w = self.w;
        let one = Complex64::new(1.0, 0.0);
        let mut rows = Complex64::new(0.0, 0.0);
        let mut n_pow_sum = Complex64::new(0.0, 0.0);
        let mut n = 1u64;
        while (n as f64) * y < EXACT_ROW_LIMIT {
            let nf = n as f64;
            rows += self.row.direct(nf * x, nf * y);
            n_pow_sum += ((one - 2.0 * w) * nf.ln()).exp();
            n += 1;
        }
        // remaining rows: y^w (n y)^{1-2w} B(w) = y^{1-w} n^{1-2w} B(w)
        let rest = self.zeta_2w_1 - n_pow_sum;
        (w * y.ln()).exp() * (self.zeta_2w + rows)
            + ((one - w) * y.ln()).exp() * self.row.integral_coefficient() * rest
    }

    /// Coprime sum at tau, without the t prefactor.
    pub fn coprime_sum(&self, tau: Complex64) -> Complex64 {
        self.full_sum(tau) / self.zeta_2w
    }

    pub fn at(&self, p: &IwasawaPoint) -> Complex64 {
        t_prefactor(&self.gamma, p.t) * self.coprime_sum(p.tau())
    }

    pub fn on_g(&self, g: &RealMat2) -> Result<Complex64> {
        let g = GroupElement2::from_array(g)?;
        Ok(self.at(&iwasawa_coords(&g)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gamma_a() -> SpectralParamGL2 {
        SpectralParamGL2::new(c(0.0, 1.5), c(0.0, -1.5))
    }

    #[test]
    fn iwasawa_examples() {
        let p = iwasawa_coords(&GroupElement2::identity()).unwrap();
        assert_eq!((p.x, p.y, p.t), (0.0, 1.0, 1.0));
        let p = iwasawa_coords(&GroupElement2::new(2.0, 0.0, 0.0, 2.0).unwrap()).unwrap();
        assert_eq!((p.x, p.y, p.t), (0.0, 1.0, 4.0));
        let g = GroupElement2::new(2.0, 1.0, 0.0, 1.0).unwrap();
        let p = iwasawa_coords(&g).unwrap();
        assert_eq!((p.x, p.y, p.t), (1.0, 2.0, 2.0));
        let back = p.section();
        assert!((back.a - 2.0).abs() < 1e-15 && (back.b - 1.0).abs() < 1e-15 && (back.d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn moebius_and_series_action() {
        let s = GroupElement2::new(0.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(moebius_action(&s, 2.0).unwrap(), 0.5);
        let t = GroupElement2::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(moebius_action(&t, 0.25).unwrap(), 1.25);
        assert!(moebius_action(&s, 0.0).is_err());
        let g = SpectralParamGL2::new(c(0.3, 0.1), c(-0.2, 0.0));
        let f = |x: f64| c(x.cos(), x);
        let r = GroupElement2::new(-1.0, 0.0, 0.0, 1.0).unwrap();
        assert!((principal_series_apply(g, &r, f, 0.7).unwrap() - f(-0.7)).norm() < 1e-15);
    }

    #[test]
    fn spherical_vector_is_orthogonally_invariant() {
        let g = SpectralParamGL2::new(c(0.3, 0.1), c(-0.2, 0.4));
        assert_eq!(spherical_vector(g, 0.0), c(1.0, 0.0));
        let k = GroupElement2::orthogonal(PI / 4.0, false);
        let v = principal_series_apply(g, &k, |x| spherical_vector(g, x), 0.3).unwrap();
        assert!((v - spherical_vector(g, 0.3)).norm() < 1e-12);
    }

    #[test]
    fn eisenstein_at_i() {
        let p = IwasawaPoint::new(0.0, 1.0, 1.0).unwrap();
        let e = eisenstein(gamma_a(), &p, 300).unwrap();
        assert!((e.value.re - 2.784).abs() < 1e-3, "{e:?}");
        let series = EisensteinSeries::new(gamma_a()).unwrap();
        let (lim, _) = eisenstein_limits(gamma_a(), &p, 300).unwrap();
        assert_relative_eq!(series.at(&p).re, lim.value.re, max_relative = 1e-9);
    }

    #[test]
    fn fast_evaluator_matches_corrected_box_sums() {
        let g = SpectralParamGL2::new(c(0.2, 1.25), c(0.2, -1.25));
        let series = EisensteinSeries::new(g).unwrap();
        for &(x, y) in &[(0.3, 1.1), (-0.45, 0.9), (0.1, 3.0), (2.7, 0.4)] {
            let p = IwasawaPoint::new(x, y, 1.7).unwrap();
            let (lim, _) = eisenstein_limits(g, &p, 200).unwrap();
            let fast = series.at(&p);
            assert!((fast - lim.value).norm() < 1e-7 * fast.norm(), "{x} {y}: {fast} vs {lim:?}");
        }
    }

    #[test]
    fn divergent_parameters_are_rejected() {
        let g = SpectralParamGL2::new(c(0.3, 0.0), c(-0.3, 0.0));
        let p = IwasawaPoint::new(0.0, 1.0, 1.0).unwrap();
        assert!(eisenstein(g, &p, 10).unwrap_err().is_domain_error());
    }
}
