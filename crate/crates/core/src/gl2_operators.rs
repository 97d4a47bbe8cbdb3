//! Hecke operators, the Archimedean and global GL2 operators, and the matrix
//! theta series.
//!
//! Integrals over GL2(R) use Lebesgue measure on the four matrix entries, and
//! the Archimedean operator acts by right convolution,
//! `Q_R[f](g) = int |det h|^{s-3/2} e^{-pi |h|^2} f(g h^{-1}) dh`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gl2_analytic::{
    eisenstein_limits, iwasawa_coords, reduce_tau, EisensteinSeries, GroupElement2, IwasawaPoint, LatticeRow,
    SpectralParamGL2,
};
use crate::gl2_arith::{bz_coset_rep, gcd, hecke_cosets, sigma, CoprimePair, CosetRep};
use crate::numerics::exec::{map_indexed, map_slice, ordered_sum};
use crate::numerics::rules::gauss_legendre;
use crate::numerics::{Estimate, MatrixGaussRule, QuadratureSpec, RealMat2};
use crate::specfun::{archimedean_l, completed_zeta, gamma as gamma_fn, riemann_zeta};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

fn cpow(base: f64, e: Complex64) -> Complex64 {
    if e.im == 0.0 {
        Complex64::new(base.powf(e.re), 0.0)
    } else {
        (e * base.ln()).exp()
    }
}

// ---------------------------------------------------------------- Hecke

/// How the Eisenstein series is evaluated inside an operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesEval {
    /// Box-truncated sum at height H, completed by the continuum tail.
    Box(u64),
    /// Row-integral evaluator, accurate to about 1e-12 relative.
    Exact,
}

struct PhiEval {
    gamma: SpectralParamGL2,
    how: SeriesEval,
    fast: EisensteinSeries,
}

impl PhiEval {
    fn new(gamma: SpectralParamGL2, how: SeriesEval) -> Result<Self> {
        Ok(PhiEval { gamma, how, fast: EisensteinSeries::new(gamma)? })
    }

    fn at(&self, p: &IwasawaPoint) -> Result<Estimate> {
        match self.how {
            SeriesEval::Box(h) => Ok(eisenstein_limits(self.gamma, p, h)?.0),
            SeriesEval::Exact => {
                let v = self.fast.at(p);
                Ok(Estimate::new(v, 1e-12 * v.norm()))
            }
        }
    }
}

fn coset_image(c: &CosetRep, p: &IwasawaPoint) -> Result<IwasawaPoint> {
    let (a, b, d) = (c.a as f64, c.b as f64, c.d as f64);
    IwasawaPoint::new((a * p.x + b) / d, a * p.y / d, (c.a * c.d) as f64 * p.t)
}

/// `(T_n Phi)(tau, t) = sum over cosets (a b; 0 d) of Phi((a tau + b)/d, n t)`.
pub fn hecke_t_apply(n: u64, gamma: SpectralParamGL2, p: &IwasawaPoint, how: SeriesEval) -> Result<Estimate> {
    if n == 0 {
        return Err(Error::invalid("hecke_t_apply", "n must be positive"));
    }
    let phi = PhiEval::new(gamma, how)?;
    let cosets = hecke_cosets(n);
    let parts = map_slice(&cosets, |c| coset_image(c, p).and_then(|q| phi.at(&q)));
    let mut vals = Vec::with_capacity(parts.len());
    let mut err = 0.0;
    for e in parts {
        let e = e?;
        vals.push(e.value);
        err += e.error;
    }
    Ok(Estimate::new(ordered_sum(&vals), err))
}

/// `n^{1/2} sum_{ad = n} a^{i gamma1} d^{i gamma2}`; bitwise symmetric in the
/// two spectral parameters.
pub fn lambda_n(n: u64, gamma: SpectralParamGL2) -> Complex64 {
    assert!(n >= 1, "lambda_n needs n >= 1");
    let (e1, e2) = (I * gamma.gamma1, I * gamma.gamma2);
    let term = |a: u64, d: u64, x: Complex64, y: Complex64| cpow(a as f64, x) * cpow(d as f64, y);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut a = 1u64;
    while a * a <= n {
        if n % a == 0 {
            let d = n / a;
            if a == d {
                acc += term(a, d, e1, e2);
            } else {
                acc += term(a, d, e1, e2) + term(d, a, e1, e2);
            }
        }
        a += 1;
    }
    (n as f64).sqrt() * acc
}

/// `sum_{n <= N} n^{-(s+1/2)} lambda_n`, the truncated eigenvalue of the
/// discrete operator.
pub fn truncated_eigenvalue(s: Complex64, gamma: SpectralParamGL2, det_cutoff: u64) -> Complex64 {
    let terms: Vec<Complex64> =
        (1..=det_cutoff).map(|n| cpow(n as f64, -(s + 0.5)) * lambda_n(n, gamma)).collect();
    ordered_sum(&terms)
}

/// `sum_{n <= N} n^{-(s+1/2)} (T_n Phi)(p)`.
pub fn q_gl2_z_apply(
    s: Complex64,
    gamma: SpectralParamGL2,
    p: &IwasawaPoint,
    det_cutoff: u64,
    how: SeriesEval,
) -> Result<Estimate> {
    if det_cutoff == 0 {
        return Err(Error::invalid("q_gl2_z_apply", "cutoff must be positive"));
    }
    let phi = PhiEval::new(gamma, how)?;
    let mut cosets = Vec::new();
    for n in 1..=det_cutoff {
        cosets.extend(hecke_cosets(n));
    }
    let parts = map_slice(&cosets, |c| {
        let w = cpow(c.det() as f64, -(s + 0.5));
        coset_image(c, p).and_then(|q| phi.at(&q)).map(|e| Estimate::new(w * e.value, w.norm() * e.error))
    });
    let mut vals = Vec::with_capacity(parts.len());
    let mut err = 0.0;
    for e in parts {
        let e = e?;
        vals.push(e.value);
        err += e.error;
    }
    Ok(Estimate::new(ordered_sum(&vals), err))
}

// ---------------------------------------------------------- matrix theta

fn sym_min_eig(m: &RealMat2) -> f64 {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = ((m[0][0] - m[1][1]).powi(2) + 4.0 * m[0][1] * m[1][0]).max(0.0).sqrt();
    if tr > 0.0 && det > 0.0 {
        det / (0.5 * (tr + disc))
    } else {
        0.5 * (tr - disc)
    }
}

fn trace_a_alpha_b_alpha_t(a: &RealMat2, al: &RealMat2, b: &RealMat2) -> f64 {
    // Tr(A al B al^T)
    let mut ab = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            ab[i][j] = (0..2).map(|k| al[i][k] * (0..2).map(|l| b[k][l] * al[j][l]).sum::<f64>()).sum();
        }
    }
    (0..2).map(|i| (0..2).map(|j| a[i][j] * ab[j][i]).sum::<f64>()).sum()
}

/// `sum_{det alpha <= N} exp(-pi Tr(A alpha B alpha^T))` over Hecke cosets.
/// The error bounds the omitted determinants with
/// `Tr(A alpha B alpha^T) >= 2 lmin(A) lmin(B) det alpha`.
pub fn matrix_theta(a: &RealMat2, b: &RealMat2, det_cutoff: u64) -> Result<Estimate> {
    let (la, lb) = (sym_min_eig(a), sym_min_eig(b));
    if !(la > 0.0 && lb > 0.0) || (a[0][1] - a[1][0]).abs() > 1e-12 || (b[0][1] - b[1][0]).abs() > 1e-12 {
        return Err(Error::domain("matrix_theta", "A and B must be symmetric positive definite"));
    }
    let mut vals = Vec::new();
    for n in 1..=det_cutoff {
        for c in hecke_cosets(n) {
            let m = c.matrix().to_f64();
            vals.push(Complex64::new((-PI * trace_a_alpha_b_alpha_t(a, &m, b)).exp(), 0.0));
        }
    }
    let rate = 2.0 * PI * la * lb;
    let mut tail = 0.0;
    let mut n = det_cutoff + 1;
    loop {
        let nf = n as f64;
        let t = nf * (1.0 + nf.ln()) * (-rate * nf).exp();
        tail += t;
        if t < 1e-17 * tail.max(1e-300) || n > det_cutoff + 100_000 {
            break;
        }
        n += 1;
    }
    Ok(Estimate::new(ordered_sum(&vals), tail))
}

/// `Theta_alpha(0 | i g g^T) = 1 + sum_alpha exp(-pi Tr(g g^T alpha^T alpha))`.
pub fn theta_alpha(g: &GroupElement2, det_cutoff: u64) -> Result<Estimate> {
    let gt = g.transpose();
    let ggt = g.mul(&gt).to_array();
    let id = [[1.0, 0.0], [0.0, 1.0]];
    let e = matrix_theta(&id, &ggt, det_cutoff)?;
    Ok(Estimate::new(1.0 + e.value, e.error))
}

/// `prod_j zeta_hat(s - i gamma_j)`.
pub fn global_zeta_gl2(s: Complex64, gamma: SpectralParamGL2) -> Result<Complex64> {
    Ok(completed_zeta(s - I * gamma.gamma1)? * completed_zeta(s - I * gamma.gamma2)?)
}

/// `prod_j L(s - i gamma_j)` with `L(z) = pi^{-z/2} Gamma(z/2)`.
pub fn archimedean_eigen_factor(s: Complex64, gamma: SpectralParamGL2) -> Result<Complex64> {
    Ok(archimedean_l(s - I * gamma.gamma1)? * archimedean_l(s - I * gamma.gamma2)?)
}

// ------------------------------------------------- Archimedean operator

/// Right convolution against `|det h|^{s-3/2} e^{-pi |h|^2}` for a generic
/// integrand, on the determinant-adapted product rule. The error compares
/// `order` with `order / 2`.
pub fn q_gl2_r_apply<F>(s: Complex64, f: F, g: &GroupElement2, order: usize) -> Result<Estimate>
where
    F: Fn(&GroupElement2) -> Complex64 + Sync,
{
    if s.re <= 0.5 {
        return Err(Error::domain("q_gl2_r_apply", format!("Re(s) = {} <= 1/2", s.re)));
    }
    let sigma = s.re - 1.5;
    let im = s.im;
    let integrand = |h: &RealMat2| {
        let hm = GroupElement2 { a: h[0][0], b: h[0][1], c: h[1][0], d: h[1][1] };
        let det = hm.det();
        let phase = if im == 0.0 { Complex64::new(1.0, 0.0) } else { (I * im * det.abs().ln()).exp() };
        phase * f(&g.mul(&hm.inverse()))
    };
    let fine = MatrixGaussRule::new(sigma, order)?.apply(integrand)?;
    let coarse = MatrixGaussRule::new(sigma, (order / 2).max(1))?.apply(integrand)?;
    Ok(Estimate::new(fine, (fine - coarse).norm()))
}

/// A right-O2-invariant function `f(g) = t^e P(tau)` with `(tau, t)` the
/// Iwasawa coordinates of g and P invariant under SL2(Z).
pub trait AutomorphicForm: Sync {
    fn t_exponent(&self) -> Complex64;
    fn profile(&self, tau: Complex64) -> Complex64;

    fn value(&self, p: &IwasawaPoint) -> Complex64 {
        cpow(p.t, self.t_exponent()) * self.profile(p.tau())
    }
}

impl AutomorphicForm for EisensteinSeries {
    fn t_exponent(&self) -> Complex64 {
        let g = self.gamma();
        I * (g.gamma1 + g.gamma2) / 2.0
    }

    fn profile(&self, tau: Complex64) -> Complex64 {
        self.coprime_sum(tau)
    }
}

/// Constant function, used to check the folded quadrature.
#[derive(Debug, Clone, Copy)]
pub struct ConstantForm;

impl AutomorphicForm for ConstantForm {
    fn t_exponent(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn profile(&self, _tau: Complex64) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
}

/// Product rule on the fundamental domain `|x| <= 1/2, |tau| >= 1` in
/// `(x, v)` with `y = sqrt(1 - x^2) e^v`, each node carrying the SL2(Z)
/// images `gamma tau` (mod translations) whose imaginary part exceeds a floor.
struct FoldedRule {
    taus: Vec<Complex64>,
    weights: Vec<f64>,
    images: Vec<Vec<[f64; 2]>>,
}

fn panel_rule(n: usize, panels: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let r = gauss_legendre(n);
    let h = (hi - lo) / panels as f64;
    let mut out = Vec::with_capacity(n * panels);
    for p in 0..panels {
        let a = lo + h * p as f64;
        for (x, w) in r.iter() {
            out.push((a + 0.5 * h * (x + 1.0), 0.5 * h * w));
        }
    }
    out
}

fn sl2_images(tau: Complex64, y_floor: f64) -> Vec<[f64; 2]> {
    let (x, y) = (tau.re, tau.im);
    let r2 = y / y_floor;
    let mut out = vec![[x, y]];
    let c_max = (r2.sqrt() / y).floor() as i64;
    for c in 1..=c_max {
        let cf = c as f64;
        let half = (r2 - cf * cf * y * y).max(0.0).sqrt();
        let d_lo = (-cf * x - half).ceil() as i64;
        let d_hi = (-cf * x + half).floor() as i64;
        for d in d_lo..=d_hi {
            if gcd(c, d) != 1 {
                continue;
            }
            let m = bz_coset_rep(CoprimePair::new(c, d).expect("primitive"));
            let num = m.a as f64 * tau + m.b as f64;
            let den = m.c as f64 * tau + m.d as f64;
            let z = num / den;
            out.push([z.re, z.im]);
        }
    }
    out
}

impl FoldedRule {
    fn new(order: usize, v_panels: usize, v_max: f64, y_floor: f64) -> Self {
        let xs = panel_rule(order, 2, -0.5, 0.5);
        let vs = panel_rule(order, v_panels, 0.0, v_max);
        let mut taus = Vec::with_capacity(xs.len() * vs.len());
        let mut weights = Vec::with_capacity(xs.len() * vs.len());
        for &(x, wx) in &xs {
            let yb = (1.0 - x * x).sqrt();
            for &(v, wv) in &vs {
                let y = yb * v.exp();
                taus.push(Complex64::new(x, y));
                // dx dy / y^2 = dx dv / y
                weights.push(wx * wv / y);
            }
        }
        let images = map_slice(&taus, |&t| sl2_images(t, y_floor));
        FoldedRule { taus, weights, images }
    }

    /// `int_F P(tau) K(tau) dmu` for every kernel, where the caller supplies
    /// the translation-summed kernel of one image. Images below the floor
    /// enter as `coef[k] * dropped[i]`, see [`dropped_images`].
    fn integrate_many<K>(&self, profile: &[Complex64], dropped: &[Complex64], coef: &[Complex64], kernel: K) -> Vec<Complex64>
    where
        K: Fn(usize, f64, f64) -> Complex64 + Sync,
    {
        let n_kernels = coef.len();
        let per_node = map_indexed(self.taus.len(), |i| {
            let pw = profile[i] * self.weights[i];
            (0..n_kernels)
                .map(|k| {
                    let mut acc = coef[k] * dropped[i];
                    for &[zx, zy] in &self.images[i] {
                        acc += kernel(k, zx, zy);
                    }
                    pw * acc
                })
                .collect::<Vec<_>>()
        });
        (0..n_kernels)
            .map(|k| {
                let col: Vec<Complex64> = per_node.iter().map(|r| r[k]).collect();
                ordered_sum(&col)
            })
            .collect()
    }
}

/// Floor on `Im(gamma tau)` so the omitted images of a kernel with exponent
/// beta and base height >= y0 contribute less than `tol`.
fn image_floor(beta_re: f64, y0: f64, tol: f64) -> f64 {
    let c = (2.0 / y0).powf(beta_re) * (2.0 + 2.0 * y0) * 3.0 / PI / (beta_re - 1.0);
    (tol / c).powf(1.0 / (beta_re - 1.0)).min(0.05)
}

const IMAGE_TOL: f64 = 1e-6;

fn mobius_divisors(c: i64) -> Vec<(i64, f64)> {
    let mut primes = Vec::new();
    let mut r = c;
    let mut p = 2;
    while p * p <= r {
        if r % p == 0 {
            primes.push(p);
            while r % p == 0 {
                r /= p;
            }
        }
        p += 1;
    }
    if r > 1 {
        primes.push(r);
    }
    (0..1usize << primes.len())
        .map(|mask| {
            let mut e = 1;
            for (j, &q) in primes.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    e *= q;
                }
            }
            (e, if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 })
        })
        .collect()
}

fn totient(c: i64) -> f64 {
    mobius_divisors(c).iter().map(|&(e, mu)| mu * (c / e) as f64).sum()
}

/// `sum Im(gamma tau)^beta` over the images a folded rule leaves out, per node.
///
/// Rows `c <= C` are summed exactly over coprime d by Mobius inversion of the
/// full row, minus the images kept; rows beyond use the closed form
/// `y^{1-beta} B phi(c) c^{-2 beta}`.
fn dropped_images(rule: &FoldedRule, beta: Complex64, row: &LatticeRow, y_floor: f64) -> Result<Vec<Complex64>> {
    // sum_c phi(c) c^{-2 beta}
    let zeta_ratio = riemann_zeta(2.0 * beta - 1.0)? / riemann_zeta(2.0 * beta)?;
    Ok(
    map_indexed(rule.taus.len(), |i| {
        let tau = rule.taus[i];
        let (x, y) = (tau.re, tau.im);
        let kept = ((y / y_floor).sqrt() / y).floor();
        let rows = (EXACT_ROWS / y).ceil().max(kept) as i64;
        let mut total = Complex64::new(0.0, 0.0);
        let mut phi_sum = Complex64::new(0.0, 0.0);
        for c in 1..=rows {
            let cf = c as f64;
            for (e, mu) in mobius_divisors(c) {
                let ef = e as f64;
                total += mu * cpow(ef, -2.0 * beta) * row.sum(cf * x / ef, cf * y / ef);
            }
            phi_sum += totient(c) * cpow(cf, -2.0 * beta);
        }
        total *= cpow(y, beta);
        total += cpow(y, 1.0 - beta) * row.integral_coefficient() * (zeta_ratio - phi_sum);
        // the first image is tau itself
        for &[_, zy] in &rule.images[i][1..] {
            total -= cpow(zy, beta);
        }
        total
    }))
}

/// Share of the dropped-image correction counted as error; the image sum is
/// exact and only the kernel is replaced by its average over Re.
const DROPPED_FRACTION: f64 = 0.01;

/// Rows with `c y` below this many units are summed exactly.
const EXACT_ROWS: f64 = 8.0;

/// Kernel `sum_n (2 Y y0)^beta ((X + n - x0)^2 + Y^2 + y0^2)^{-beta}`, i.e.
/// `cosh d(., tau0)^{-beta}` summed over translates.
fn cosh_kernel(row: &LatticeRow, beta: Complex64, zx: f64, zy: f64, x0: f64, y0: f64) -> Complex64 {
    cpow(2.0 * zy * y0, beta) * row.sum(zx - x0, (zy * zy + y0 * y0).sqrt())
}

struct FoldedSetup {
    fine: FoldedRule,
    coarse: FoldedRule,
    fine_profile: Vec<Complex64>,
    coarse_profile: Vec<Complex64>,
    fine_dropped: Vec<Complex64>,
    coarse_dropped: Vec<Complex64>,
    row: LatticeRow,
}

impl FoldedSetup {
    /// (fine, coarse, dropped-image part of fine) for the given kernels.
    fn run<K>(&self, coef: &[Complex64], kernel: K) -> (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>)
    where
        K: Fn(usize, f64, f64) -> Complex64 + Sync,
    {
        let fine = self.fine.integrate_many(&self.fine_profile, &self.fine_dropped, coef, &kernel);
        let coarse = self.coarse.integrate_many(&self.coarse_profile, &self.coarse_dropped, coef, &kernel);
        let zero = |_: usize, _: f64, _: f64| Complex64::new(0.0, 0.0);
        let skip = FoldedRule { taus: self.fine.taus.clone(), weights: self.fine.weights.clone(), images: vec![Vec::new(); self.fine.taus.len()] };
        let dropped = skip.integrate_many(&self.fine_profile, &self.fine_dropped, coef, zero);
        (fine, coarse, dropped)
    }
}

fn folded_setup<A: AutomorphicForm>(
    form: &A,
    beta: Complex64,
    w_re: f64,
    y0_min: f64,
    spec: &QuadratureSpec,
) -> Result<FoldedSetup> {
    // integrand decays like y^{Re(w - beta)} in the cusp
    let rate = (beta.re - w_re).max(0.25);
    let v_max = 28.0 / rate;
    let floor = image_floor(beta.re, y0_min, IMAGE_TOL);
    let order = spec.order.max(4);
    let panels = spec.subdivisions.max(2);
    let row = LatticeRow::new(beta)?;
    let fine = FoldedRule::new(order, panels, v_max, floor);
    let coarse = FoldedRule::new(order - 2, panels, v_max, floor);
    let fine_profile = map_slice(&fine.taus, |&t| form.profile(t));
    let coarse_profile = map_slice(&coarse.taus, |&t| form.profile(t));
    let fine_dropped = dropped_images(&fine, beta, &row, floor)?;
    let coarse_dropped = dropped_images(&coarse, beta, &row, floor)?;
    Ok(FoldedSetup { fine, coarse, fine_profile, coarse_profile, fine_dropped, coarse_dropped, row })
}

/// Folded-domain spec used by default: 6-point panels, 2 in x and 8 in v.
/// Errors compare against panels with two fewer nodes.
pub fn default_folded_spec() -> QuadratureSpec {
    QuadratureSpec::new(crate::numerics::Scheme::GaussLegendreComposite, 6).with_subdivisions(8)
}

/// Growth exponent of the profile in the cusp, used to size the v range.
fn cusp_growth<A: AutomorphicForm>(form: &A) -> f64 {
    let p1 = form.profile(Complex64::new(0.0, 50.0)).norm();
    let p2 = form.profile(Complex64::new(0.0, 100.0)).norm();
    if p1 > 0.0 && p2 > 0.0 {
        (p2 / p1).ln() / 2f64.ln()
    } else {
        0.0
    }
}

/// `Q_R[f](g)` for a right-O2-invariant automorphic f at several points.
///
/// The t and O2 integrals are done in closed form, leaving
/// `2 pi Gamma(beta) (2 pi)^{-beta} t0^e int_H P(tau) cosh d(tau, tau0)^{-beta} dmu`
/// with `beta = s + 1/2 - e`; the hyperbolic integral is folded onto the
/// fundamental domain.
pub fn q_gl2_r_apply_automorphic<A: AutomorphicForm>(
    s: Complex64,
    form: &A,
    points: &[IwasawaPoint],
    spec: &QuadratureSpec,
) -> Result<Vec<Estimate>> {
    let e = form.t_exponent();
    let beta = s + 0.5 - e;
    let growth = cusp_growth(form);
    if beta.re <= growth + 1.0 {
        return Err(Error::domain(
            "q_gl2_r_apply_automorphic",
            format!("Re(beta) = {} too small for profile growth {growth:.3}", beta.re),
        ));
    }
    let bases: Vec<(Complex64, f64)> = points.iter().map(|p| (reduce_tau(p.tau()), p.t)).collect();
    let y0_min = bases.iter().map(|b| b.0.im).fold(f64::INFINITY, f64::min);
    let setup = folded_setup(form, beta, growth, y0_min, spec)?;
    let row = &setup.row;
    let pref = 2.0 * PI * gamma_fn(beta)? * cpow(2.0 * PI, -beta);
    // small-Im limit of the kernel, averaged over Re
    let coef: Vec<Complex64> = bases
        .iter()
        .map(|&(t0, _)| cpow(2.0 * t0.im, beta) * cpow(t0.im, 1.0 - 2.0 * beta) * row.integral_coefficient())
        .collect();
    let (fine, coarse, dropped) = setup.run(&coef, |k, zx, zy| {
        let (t0, _) = bases[k];
        cosh_kernel(row, beta, zx, zy, t0.re, t0.im)
    });
    Ok(bases
        .iter()
        .enumerate()
        .map(|(k, &(_, t))| {
            let c = pref * cpow(t, e);
            let v = c * fine[k];
            let err = (c * (fine[k] - coarse[k])).norm() + DROPPED_FRACTION * (c * dropped[k]).norm();
            Estimate::new(v, err)
        })
        .collect())
}

/// `c0 = Q_R[Phi](g) / (L(s - i gamma1) L(s - i gamma2) Phi(g))`.
pub fn estimate_c0(s: Complex64, gamma: SpectralParamGL2, points: &[IwasawaPoint], spec: &QuadratureSpec) -> Result<Vec<Estimate>> {
    let phi = EisensteinSeries::new(gamma)?;
    let q = q_gl2_r_apply_automorphic(s, &phi, points, spec)?;
    let l = archimedean_eigen_factor(s, gamma)?;
    Ok(q.iter()
        .zip(points)
        .map(|(e, p)| {
            let den = l * phi.value(p);
            Estimate::new(e.value / den, e.error / den.norm())
        })
        .collect())
}

// ------------------------------------------------------ global operator

/// Gram matrix reduced by SL2(Z) congruence: `|m12| <= m22 / 2`, `m22 <= m11`.
fn reduce_gram(mut m: [f64; 3]) -> [f64; 3] {
    for _ in 0..200 {
        let k = -(m[1] / m[2]).round();
        m = [m[0] + 2.0 * k * m[1] + k * k * m[2], m[1] + k * m[2], m[2]];
        if m[0] < m[2] * (1.0 - 1e-14) {
            m = [m[2], -m[1], m[0]];
        } else {
            break;
        }
    }
    m
}

/// Global operator by direct integration of the summed kernel
/// `|det g|^{s+1/2} sum_alpha |det h|^{s+1/2} e^{-pi Tr(h^T h alpha g g^T alpha^T)}`
/// against `Phi(h^{-1}) dh / |det h|^2`, over cosets with `det alpha <= N`.
pub fn q_gl2_global_apply<A: AutomorphicForm>(
    s: Complex64,
    form: &A,
    g: &GroupElement2,
    det_cutoff: u64,
    representative: &dyn Fn(&CosetRep) -> GroupElement2,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let e = form.t_exponent();
    let beta = s + 0.5 - e;
    let growth = cusp_growth(form);
    if beta.re <= growth + 1.0 {
        return Err(Error::domain("q_gl2_global_apply", format!("Re(beta) = {} too small", beta.re)));
    }
    let det_g = g.det().abs();
    if det_g == 0.0 {
        return Err(Error::domain("q_gl2_global_apply", "singular g"));
    }
    // (x_M, y_M, m22) of each reduced Gram matrix M = (alpha g)(alpha g)^T
    let mut bases = Vec::new();
    for n in 1..=det_cutoff {
        for c in hecke_cosets(n) {
            let ag = representative(&c).mul(g);
            let m = reduce_gram(ag.gram());
            let det_m = m[0] * m[2] - m[1] * m[1];
            bases.push((m[1] / m[2], det_m.sqrt() / m[2], m[2]));
        }
    }
    let y0_min = bases.iter().map(|b| b.1).fold(f64::INFINITY, f64::min);
    let setup = folded_setup(form, beta, growth, y0_min, spec)?;
    let row = &setup.row;
    let coef: Complex64 = bases
        .iter()
        .map(|&(_, ym, m22)| cpow(1.0 / m22, beta) * cpow(ym, 1.0 - 2.0 * beta) * row.integral_coefficient())
        .sum();
    // Tr(N M N^T) over translates: sum_n (Y/m22)^beta ((X + n - x_M)^2 + y_M^2 + Y^2)^{-beta}
    let (fine, coarse, dropped) = setup.run(&[coef], |_, zx, zy| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(xm, ym, m22) in &bases {
            acc += cpow(zy / m22, beta) * row.sum(zx - xm, (ym * ym + zy * zy).sqrt());
        }
        acc
    });
    let pref = 2.0 * PI * gamma_fn(beta)? * cpow(PI, -beta) * cpow(det_g, s + 0.5);
    let v = pref * fine[0];
    let err = (pref * (fine[0] - coarse[0])).norm() + DROPPED_FRACTION * (pref * dropped[0]).norm();
    Ok(Estimate::new(v, err))
}

/// Canonical upper-triangular representative.
pub fn canonical_representative(c: &CosetRep) -> GroupElement2 {
    GroupElement2::from_int(&c.matrix())
}

/// The same operator as `sum_alpha det(alpha)^{-(s+1/2)} Q_R[Phi](alpha g)`.
pub fn q_gl2_global_composed<A: AutomorphicForm>(
    s: Complex64,
    form: &A,
    g: &GroupElement2,
    det_cutoff: u64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let mut weights = Vec::new();
    let mut points = Vec::new();
    for n in 1..=det_cutoff {
        for c in hecke_cosets(n) {
            weights.push(cpow(n as f64, -(s + 0.5)));
            points.push(iwasawa_coords(&canonical_representative(&c).mul(g))?);
        }
    }
    let q = q_gl2_r_apply_automorphic(s, form, &points, spec)?;
    let vals: Vec<Complex64> = weights.iter().zip(&q).map(|(w, e)| w * e.value).collect();
    let err = weights.iter().zip(&q).map(|(w, e)| w.norm() * e.error).sum();
    Ok(Estimate::new(ordered_sum(&vals), err))
}

// ------------------------------------------------ theta-kernel integral

/// Outcome of integrating the truncated theta kernel against `|det g|^s`.
#[derive(Debug, Clone, Copy)]
pub struct EqAllReport {
    pub lhs: Estimate,
    pub rhs: Complex64,
    /// `lhs / rhs`; constant in s only if the identity holds.
    pub ratio: Complex64,
}

/// `int (Theta_alpha(0 | i g g^T) - 1) |det g|^s dg / |det g|^2` truncated to
/// `det alpha <= N`, against `zeta_hat(s)^2`. Each coset is integrated after
/// `u = alpha g` on the determinant-adapted rule.
pub fn verify_eq_all(s: Complex64, det_cutoff: u64, spec: &QuadratureSpec) -> Result<EqAllReport> {
    let order = spec.order;
    if s.re <= 2.0 {
        return Err(Error::domain("verify_eq_all", format!("Re(s) = {} <= 2", s.re)));
    }
    let sig = s.re - 2.0;
    let im = s.im;
    let integrand = |h: &RealMat2| {
        let det = (h[0][0] * h[1][1] - h[0][1] * h[1][0]).abs();
        if im == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            (I * im * det.ln()).exp()
        }
    };
    let fine = MatrixGaussRule::new(sig, order)?.apply(integrand)?;
    let coarse = MatrixGaussRule::new(sig, (order / 2).max(1))?.apply(integrand)?;
    // dg = du / det^2 and |det g| = |det u| / det, so each coset scales by det^{-s}
    let terms: Vec<Complex64> = (1..=det_cutoff)
        .map(|n| sigma(n) as f64 * cpow(n as f64, -s) * fine)
        .collect();
    let total = ordered_sum(&terms);
    let weight: f64 = (1..=det_cutoff).map(|n| sigma(n) as f64 * (n as f64).powf(-s.re)).sum();
    let err = weight * (fine - coarse).norm();
    let rhs = completed_zeta(s)?.powi(2);
    Ok(EqAllReport { lhs: Estimate::new(total, err), rhs, ratio: total / rhs })
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
    fn lambda_small() {
        assert_relative_eq!(lambda_n(2, gamma_a()).re, 4.5, max_relative = 1e-14);
        assert_eq!(lambda_n(1, gamma_a()), c(1.0, 0.0));
        let g = SpectralParamGL2::new(c(0.3, 0.7), c(-0.1, -0.4));
        let h = SpectralParamGL2::new(g.gamma2, g.gamma1);
        for n in 1..40 {
            assert_eq!(lambda_n(n, g), lambda_n(n, h));
        }
    }

    #[test]
    fn theta_examples() {
        let id = [[1.0, 0.0], [0.0, 1.0]];
        let t = matrix_theta(&id, &id, 1).unwrap();
        assert_relative_eq!(t.value.re, (-2.0 * PI).exp(), max_relative = 1e-15);
        let ta = theta_alpha(&GroupElement2::identity(), 1).unwrap();
        assert_relative_eq!(ta.value.re, 1.0 + (-2.0 * PI).exp(), max_relative = 1e-15);
        assert!(matrix_theta(&[[1.0, 0.0], [0.0, -1.0]], &id, 3).is_err());
    }

    #[test]
    fn gram_reduction() {
        let m = reduce_gram([5.0, 7.0, 10.0]);
        assert!(m[1].abs() <= 0.5 * m[2] + 1e-12 && m[2] <= m[0] + 1e-12);
        assert_relative_eq!(m[0] * m[2] - m[1] * m[1], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn folded_rule_integrates_constant() {
        // int_H cosh(d)^{-beta} dmu = 2 pi / (beta - 1)
        let s = c(3.0, 0.0);
        let pts = [IwasawaPoint::new(0.1, 1.3, 1.0).unwrap(), IwasawaPoint::new(0.7, 0.3, 2.0).unwrap()];
        let spec = default_folded_spec();
        let q = q_gl2_r_apply_automorphic(s, &ConstantForm, &pts, &spec).unwrap();
        let mass = MatrixGaussRule::total_mass(s.re - 1.5);
        for e in q {
            assert!((e.value.re - mass).abs() < 1e-6 * mass, "{e:?} vs {mass}");
        }
    }

    #[test]
    fn generic_rule_on_constant() {
        let s = c(2.7, 0.0);
        let e = q_gl2_r_apply(s, |_| c(1.0, 0.0), &GroupElement2::identity(), 12).unwrap();
        assert_relative_eq!(e.value.re, MatrixGaussRule::total_mass(1.2), max_relative = 1e-10);
    }
}
