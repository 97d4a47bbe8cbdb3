//! Named verification suites. Defaults reproduce the acceptance grids, so
//! `verify <suite>` with no flags runs the advertised check.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;

use hecke_core::gl1::{check_fr2, congruence_gap_ln, psi, q_gl1_global_apply, q_gl1_r_apply, GL1Point, GL1SpectralParam};
use hecke_core::gl2_analytic::{
    eisenstein, eisenstein_limits, iwasawa_coords, principal_series_apply, spherical_vector, EisensteinSeries,
    Generator, GroupElement2, IwasawaPoint, SpectralParamGL2,
};
use hecke_core::gl2_arith::{coset_count, gl2_zeta, hecke_cosets, sigma};
use hecke_core::gl2_operators::{
    archimedean_eigen_factor, canonical_representative, default_folded_spec, estimate_c0, global_zeta_gl2, hecke_t_apply, lambda_n,
    q_gl2_global_apply, q_gl2_global_composed, truncated_eigenvalue, verify_eq_all, AutomorphicForm, SeriesEval,
};
use hecke_core::numerics::{QuadratureSpec, Scheme};
use hecke_core::specfun::{archimedean_l, completed_zeta, riemann_zeta, theta_constant};

use crate::complex::format_complex;
use crate::error::{CliError, CliResult};
use crate::report::{rel, ReportBuilder, VerificationReport};
use crate::settings::{Reader, Settings};

type SuiteFn = fn(&Reader) -> CliResult<ReportBuilder>;

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    run: SuiteFn,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "hecke-eigenvalues", about: "T_n on the Eisenstein series against sigma_3(n)/n", run: hecke_eigenvalues },
    Suite { name: "gl2-zeta-split", about: "Hecke coset zeta against zeta(s-1/2) zeta(s+1/2)", run: gl2_zeta_split },
    Suite { name: "gl1-eigenvalues", about: "GL1 Archimedean and global operators on characters", run: gl1_eigenvalues },
    Suite { name: "fr1", about: "completed zeta functional equation", run: fr1 },
    Suite { name: "fr2", about: "GL1 kernel functional equation on a grid", run: fr2 },
    Suite { name: "theta-modularity", about: "Theta(i/y) = sqrt(y) Theta(iy)", run: theta_modularity },
    Suite { name: "gl2z-invariance", about: "Eisenstein series under the generators S and T", run: gl2z_invariance },
    Suite { name: "coprime-factorization", about: "zeta(2w) times the coprime sum is the full lattice sum", run: coprime_factorization },
    Suite { name: "spherical-invariance", about: "O2 acts trivially on the spherical vector", run: spherical_invariance },
    Suite { name: "coset-counts", about: "sigma(n) and Hecke coset counts by brute force", run: coset_counts },
    Suite { name: "archimedean-ratio", about: "constancy of Q_R[Phi] / (L L Phi)", run: archimedean_ratio },
    Suite { name: "global-composition", about: "global operator on Phi: eigenvalue and factorization", run: global_composition },
    Suite { name: "eq-all", about: "theta-kernel integral against zeta_hat(s)^2", run: eq_all },
    Suite { name: "eq-all-shifted", about: "theta-kernel integral against zeta_hat(s) zeta_hat(s-1)", run: eq_all_shifted },
    Suite { name: "gl2-functional-eq", about: "GL2 completed zeta under s -> 1-s, gamma -> -gamma", run: gl2_functional_eq },
    Suite { name: "congruence-limit", about: "level-N kernel gap decreasing in N", run: congruence_limit },
];

pub fn find(name: &str) -> CliResult<&'static Suite> {
    SUITES.iter().find(|s| s.name == name).ok_or_else(|| {
        let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
        CliError::Domain(format!("unknown suite {name:?}; available: {}", names.join(", ")))
    })
}

/// Run a suite. With `timing = false` the report records `runtime_ms = 0`,
/// which makes reports from identical settings byte-identical.
pub fn run(name: &str, settings: &Settings, timing: bool) -> CliResult<VerificationReport> {
    let suite = find(name)?;
    let reader = Reader::new(settings);
    let start = Instant::now();
    let builder = (suite.run)(&reader)?;
    let ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
    Ok(builder.finish(name, reader.finish()?, ms))
}

/// Re-run from the `settings` block of an earlier report.
pub fn replay(report: &VerificationReport, timing: bool) -> CliResult<VerificationReport> {
    run(&report.identity, &Settings::from(report.settings.clone()), timing)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fx(x: f64) -> String {
    format!("{x}")
}

fn fz(z: Complex64) -> String {
    format_complex(z)
}

pub fn gamma_a() -> SpectralParamGL2 {
    SpectralParamGL2::new(c(0.0, 1.5), c(0.0, -1.5))
}

pub fn gamma_b() -> SpectralParamGL2 {
    SpectralParamGL2::new(c(0.2, 1.25), c(0.2, -1.25))
}

fn spectral(r: &Reader, k1: &str, k2: &str, def: SpectralParamGL2) -> CliResult<SpectralParamGL2> {
    Ok(SpectralParamGL2::new(r.complex(k1, def.gamma1)?, r.complex(k2, def.gamma2)?))
}

fn at_least(r: &Reader, key: &str, default: u64, min: u64) -> CliResult<u64> {
    let v = r.u64(key, default)?;
    if v < min {
        return Err(CliError::Domain(format!("{key} must be at least {min}")));
    }
    Ok(v)
}

fn point_at(tau: Complex64, t: f64) -> CliResult<IwasawaPoint> {
    Ok(IwasawaPoint::new(tau.re, tau.im, t)?)
}

fn folded_spec(r: &Reader) -> CliResult<QuadratureSpec> {
    let d = default_folded_spec();
    let order = at_least(r, "order", d.order as u64, 4)? as usize;
    let panels = at_least(r, "subdivisions", d.subdivisions as u64, 2)? as usize;
    Ok(QuadratureSpec::new(Scheme::GaussLegendreComposite, order).with_subdivisions(panels))
}

// ---------------------------------------------------------------- suites

fn hecke_eigenvalues(r: &Reader) -> CliResult<ReportBuilder> {
    let n_max = at_least(r, "n-max", 6, 2)?;
    let h = at_least(r, "height", 500, 4)?;
    let gamma = spectral(r, "gamma1", "gamma2", gamma_a())?;
    let taus = r.complex_list("taus", &[c(0.3, 1.1), c(-0.2, 0.9)])?;
    let t = r.f64("t", 1.0)?;
    let tol = r.f64("tol", 1e-4)?;
    let mut b = ReportBuilder::new();
    b.axis("n", (2..=n_max).map(|n| n.to_string())).axis("tau", taus.iter().map(|z| fz(*z)));
    let mut ratios = Vec::new();
    for &tau in &taus {
        let p = point_at(tau, t)?;
        let phi = eisenstein_limits(gamma, &p, h)?.0.value;
        let row: Vec<Complex64> = (2..=n_max)
            .map(|n| hecke_t_apply(n, gamma, &p, SeriesEval::Box(h)).map(|e| e.value / phi))
            .collect::<Result<_, _>>()?;
        for (n, &ratio) in (2..=n_max).zip(&row) {
            let lam = lambda_n(n, gamma);
            b.point(format!("eigenvalue n={n}"), &[("n", n.to_string()), ("tau", fz(tau))], ratio, lam, rel(ratio, lam), tol);
        }
        ratios.push(row);
    }
    if let [first, rest @ ..] = ratios.as_slice() {
        for (j, other) in rest.iter().enumerate() {
            for (k, n) in (2..=n_max).enumerate() {
                let lam = lambda_n(n, gamma);
                let res = (first[k] - other[k]).norm() / lam.norm();
                b.point(
                    format!("agreement n={n}"),
                    &[("n", n.to_string()), ("tau", fz(taus[0])), ("tau2", fz(taus[j + 1]))],
                    first[k],
                    other[k],
                    res,
                    tol,
                );
            }
        }
    }
    Ok(b)
}

fn gl2_zeta_split(r: &Reader) -> CliResult<ReportBuilder> {
    let s = r.complex("s", c(2.5, 0.0))?;
    let cutoff = at_least(r, "cutoff", 10_000, 1)?;
    let tol = r.f64("tol", 1e-3)?;
    let lhs = gl2_zeta(s, cutoff)?.value;
    let rhs = riemann_zeta(s - 0.5)? * riemann_zeta(s + 0.5)?;
    let mut b = ReportBuilder::new();
    b.axis("s", [fz(s)]).axis("cutoff", [cutoff.to_string()]);
    b.point("coset sum", &[("s", fz(s)), ("cutoff", cutoff.to_string())], lhs, rhs, rel(lhs, rhs), tol);
    Ok(b)
}

fn gl1_eigenvalues(r: &Reader) -> CliResult<ReportBuilder> {
    let ss = r.f64_list("s-values", &[3.0, 3.0, 2.2])?;
    let gs = r.f64_list("gamma-values", &[0.0, 0.7, -0.4])?;
    let x = r.f64("x", 0.7)?;
    let tol = r.f64("tol", 1e-6)?;
    if ss.len() != gs.len() {
        return Err(CliError::Domain("s-values and gamma-values differ in length".into()));
    }
    let spec = QuadratureSpec::default();
    let pt = GL1Point::new(x)?;
    let mut b = ReportBuilder::new();
    b.axis("s", ss.iter().map(|v| fx(*v))).axis("gamma", gs.iter().map(|v| fx(*v)));
    for (&s, &g) in ss.iter().zip(&gs) {
        let (s, gm) = (c(s, 0.0), GL1SpectralParam::real(g));
        let f = |y: f64| psi(gm, GL1Point::new(y).expect("nonzero argument"));
        let shifted = s - c(0.0, g);
        let params = [("s", fz(s)), ("gamma", fx(g)), ("x", fx(x))];
        let ar = q_gl1_r_apply(s, f, pt, &spec)?.value;
        let want = archimedean_l(shifted)? * f(x);
        b.point("archimedean", &params, ar, want, rel(ar, want), tol);
        let gl = q_gl1_global_apply(s, f, pt, &spec)?.value;
        let want = completed_zeta(shifted)? * f(x);
        b.point("global", &params, gl, want, rel(gl, want), tol);
    }
    Ok(b)
}

fn fr1(r: &Reader) -> CliResult<ReportBuilder> {
    let ss = r.complex_list("s-values", &[c(0.3, 0.0), c(0.6, 0.0), c(0.25, 0.4)])?;
    let tol = r.f64("tol", 1e-8)?;
    let mut b = ReportBuilder::new();
    b.axis("s", ss.iter().map(|z| fz(*z)));
    for s in ss {
        let lhs = completed_zeta(s)?;
        let rhs = completed_zeta(1.0 - s)?;
        b.point("completed zeta", &[("s", fz(s))], lhs, rhs, (lhs - rhs).norm(), tol);
    }
    Ok(b)
}

fn linspace(lo: f64, hi: f64, n: u64) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

fn fr2(r: &Reader) -> CliResult<ReportBuilder> {
    let (s_lo, s_hi) = (r.f64("s-min", 0.2)?, r.f64("s-max", 0.8)?);
    let (x_lo, x_hi) = (r.f64("x-min", 0.5)?, r.f64("x-max", 2.0)?);
    let n = at_least(r, "grid", 5, 1)?;
    let tol = r.f64("tol", 1e-10)?;
    let (ss, xs) = (linspace(s_lo, s_hi, n), linspace(x_lo, x_hi, n));
    let mut b = ReportBuilder::new();
    b.axis("s", ss.iter().map(|v| fx(*v))).axis("x", xs.iter().map(|v| fx(*v)));
    for &s in &ss {
        for &x in &xs {
            let res = check_fr2(c(s, 0.0), GL1Point::new(x)?);
            b.point("kernel", &[("s", fx(s)), ("x", fx(x))], c(res, 0.0), c(0.0, 0.0), res, tol);
        }
    }
    Ok(b)
}

fn theta_modularity(r: &Reader) -> CliResult<ReportBuilder> {
    let ys = r.f64_list("y-values", &[0.25, 0.5, 1.0, 2.0, 4.0])?;
    let tol = r.f64("tol", 1e-10)?;
    let mut b = ReportBuilder::new();
    b.axis("y", ys.iter().map(|v| fx(*v)));
    for y in ys {
        if y <= 0.0 {
            return Err(CliError::Domain(format!("y = {y} must be positive")));
        }
        let lhs = theta_constant(c(0.0, 1.0 / y))?;
        let rhs = y.sqrt() * theta_constant(c(0.0, y))?;
        b.point("theta", &[("y", fx(y))], lhs, rhs, (lhs - rhs).norm(), tol);
    }
    Ok(b)
}

fn gl2z_invariance(r: &Reader) -> CliResult<ReportBuilder> {
    let tau = r.complex("tau", c(0.3, 1.1))?;
    let t = r.f64("t", 1.0)?;
    let h = at_least(r, "height", 1000, 1)?;
    let gamma = spectral(r, "gamma1", "gamma2", gamma_a())?;
    let tol = r.f64("tol", 1e-4)?;
    let p = point_at(tau, t)?;
    let base = eisenstein(gamma, &p, h)?;
    let mut b = ReportBuilder::new();
    b.axis("generator", ["S".to_string(), "T".to_string()]);
    for (name, gen) in [("S", Generator::S), ("T", Generator::T)] {
        let q = gen.act(&p)?;
        let moved = eisenstein(gamma, &q, h)?;
        let bound = 2.0 * (base.error + moved.error);
        b.point(
            format!("generator {name}"),
            &[("generator", name.to_string()), ("tau", fz(tau)), ("tail_bound", fx(bound))],
            moved.value,
            base.value,
            (moved.value - base.value).norm(),
            tol.min(bound),
        );
    }
    Ok(b)
}

fn coprime_factorization(r: &Reader) -> CliResult<ReportBuilder> {
    let tau = r.complex("tau", c(0.0, 1.0))?;
    let h = at_least(r, "height", 300, 4)?;
    let gamma = spectral(r, "gamma1", "gamma2", gamma_a())?;
    let tol = r.f64("tol", 1e-6)?;
    let p = point_at(tau, 1.0)?;
    let (prim, full) = eisenstein_limits(gamma, &p, h)?;
    let z = riemann_zeta(2.0 * gamma.w())?;
    let lhs = z * prim.value;
    let mut b = ReportBuilder::new();
    b.axis("tau", [fz(tau)]);
    b.point("zeta(2w) coprime vs full", &[("tau", fz(tau)), ("height", h.to_string())], lhs, full.value, rel(lhs, full.value), tol);
    Ok(b)
}

fn spherical_invariance(r: &Reader) -> CliResult<ReportBuilder> {
    let gamma = spectral(r, "gamma1", "gamma2", SpectralParamGL2::new(c(0.3, 0.2), c(-0.1, 0.5)))?;
    let count = at_least(r, "samples", 16, 1)?;
    let xs = r.f64_list("x-values", &[0.0, 0.3, 2.0])?;
    let tol = r.f64("tol", 1e-8)?;
    let mut b = ReportBuilder::new();
    b.axis("element", (0..count).map(|k| k.to_string())).axis("x", xs.iter().map(|v| fx(*v)));
    for k in 0..count {
        let theta = 2.0 * PI * k as f64 / count as f64 + 0.1;
        let reflect = k % 2 == 1;
        let el = GroupElement2::orthogonal(theta, reflect);
        for &x in &xs {
            let lhs = principal_series_apply(gamma, &el, |u| spherical_vector(gamma, u), x)?;
            let rhs = spherical_vector(gamma, x);
            b.point(
                "O2 element",
                &[("theta", fx(theta)), ("reflect", reflect.to_string()), ("x", fx(x))],
                lhs,
                rhs,
                (lhs - rhs).norm(),
                tol,
            );
        }
    }
    Ok(b)
}

fn coset_counts(r: &Reader) -> CliResult<ReportBuilder> {
    let n_max = at_least(r, "n-max", 10_000, 1)?;
    let mut b = ReportBuilder::new();
    b.axis("n", [format!("1..={n_max}")]);
    // divisor sums by sieve, independent of the factorization in sigma()
    let mut sieve = vec![0u64; n_max as usize + 1];
    for d in 1..=n_max {
        for m in (d..=n_max).step_by(d as usize) {
            sieve[m as usize] += d;
        }
    }
    let (mut bad_sigma, mut bad_list, mut bad_count) = (0u64, 0u64, 0u64);
    let mut total = 0u64;
    for n in 1..=n_max {
        let want = sieve[n as usize];
        total += want;
        bad_sigma += (sigma(n) != want) as u64;
        let reps = hecke_cosets(n);
        let well_formed = reps.iter().all(|c| c.a * c.d == n && c.b < c.d);
        bad_list += (reps.len() as u64 != want || !well_formed) as u64;
        bad_count += (coset_count(n) != want) as u64;
    }
    let zero = c(0.0, 0.0);
    let tot = c(total as f64, 0.0);
    for (label, bad) in [("sigma", bad_sigma), ("coset list", bad_list), ("coset count", bad_count)] {
        b.point(format!("{label} mismatches"), &[("n-max", n_max.to_string())], c(bad as f64, 0.0), zero, bad as f64, 0.0);
    }
    b.point("sum of sigma", &[("n-max", n_max.to_string())], tot, tot, 0.0, 0.0);
    Ok(b)
}

struct RatioGrid {
    ss: Vec<f64>,
    gammas: Vec<(String, SpectralParamGL2)>,
    points: Vec<IwasawaPoint>,
}

fn ratio_grid(r: &Reader) -> CliResult<RatioGrid> {
    let ss = r.f64_list("s-values", &[3.0, 3.5])?;
    let g1 = r.complex_list("gamma1-values", &[gamma_a().gamma1, gamma_b().gamma1])?;
    let g2 = r.complex_list("gamma2-values", &[gamma_a().gamma2, gamma_b().gamma2])?;
    let taus = r.complex_list("taus", &[c(0.0, 1.0), c(0.31, 0.77)])?;
    let ts = r.f64_list("t-values", &[1.0, 1.9])?;
    if g1.len() != g2.len() || taus.len() != ts.len() {
        return Err(CliError::Domain("paired lists differ in length".into()));
    }
    let gammas = g1
        .iter()
        .zip(&g2)
        .map(|(&a, &b)| (format!("({},{})", fz(a), fz(b)), SpectralParamGL2::new(a, b)))
        .collect();
    let points = taus.iter().zip(&ts).map(|(&z, &t)| point_at(z, t)).collect::<CliResult<_>>()?;
    Ok(RatioGrid { ss, gammas, points })
}

struct C0Fit {
    /// (s, gamma label, point index, estimate)
    samples: Vec<(f64, String, usize, Complex64)>,
    mean: Complex64,
}

fn fit_c0(grid: &RatioGrid, spec: &QuadratureSpec) -> CliResult<C0Fit> {
    let mut samples = Vec::new();
    for &s in &grid.ss {
        for (label, g) in &grid.gammas {
            let est = estimate_c0(c(s, 0.0), *g, &grid.points, spec)?;
            for (k, e) in est.iter().enumerate() {
                samples.push((s, label.clone(), k, e.value));
            }
        }
    }
    if samples.is_empty() {
        return Err(CliError::Domain("empty c0 grid".into()));
    }
    let mean = samples.iter().map(|x| x.3).sum::<Complex64>() / samples.len() as f64;
    Ok(C0Fit { samples, mean })
}

fn archimedean_ratio(r: &Reader) -> CliResult<ReportBuilder> {
    let grid = ratio_grid(r)?;
    let spec = folded_spec(r)?;
    let tol = r.f64("tol", 1e-2)?;
    let fit = fit_c0(&grid, &spec)?;
    let mut b = ReportBuilder::new();
    b.axis("s", grid.ss.iter().map(|v| fx(*v)))
        .axis("gamma", grid.gammas.iter().map(|g| g.0.clone()))
        .axis("point", grid.points.iter().map(|p| format!("({}, {}, {})", p.x, p.y, p.t)));
    for (s, label, k, c0) in &fit.samples {
        let p = grid.points[*k];
        let params = [("s", fx(*s)), ("gamma", label.clone()), ("x", fx(p.x)), ("y", fx(p.y)), ("t", fx(p.t))];
        b.point("c0 / mean", &params, *c0, fit.mean, rel(*c0, fit.mean), tol);
    }
    // with c0 fixed to the mean: observed Q_R[Phi] against c0 L L Phi
    for (s, label, k, c0) in &fit.samples {
        let p = grid.points[*k];
        let g = grid.gammas.iter().find(|x| &x.0 == label).expect("label from grid").1;
        let scale = archimedean_eigen_factor(c(*s, 0.0), g)? * EisensteinSeries::new(g)?.value(&p);
        let (observed, predicted) = (*c0 * scale, fit.mean * scale);
        let params = [("s", fx(*s)), ("gamma", label.clone()), ("x", fx(p.x)), ("y", fx(p.y)), ("t", fx(p.t))];
        b.point("observed / predicted", &params, observed, predicted, rel(observed, predicted), tol);
    }
    Ok(b)
}

fn global_composition(r: &Reader) -> CliResult<ReportBuilder> {
    let s = r.complex("s", c(3.0, 0.0))?;
    let gamma = spectral(r, "gamma1", "gamma2", gamma_a())?;
    let entries = r.f64_list("g", &[1.1, 0.3, -0.2, 0.8])?;
    let cutoff = at_least(r, "cutoff", 8, 1)?;
    let tol = r.f64("tol", 1e-2)?;
    let c0_mode = r.string("c0", "fit");
    let spec = folded_spec(r)?;
    let c0 = match c0_mode.as_str() {
        "fit" => fit_c0(&ratio_grid(r)?, &spec)?.mean,
        v => crate::complex::parse_complex(v).ok_or_else(|| CliError::Domain(format!("c0={v:?}: expected fit or a number")))?,
    };
    let [a, bb, cc, d] = entries[..] else {
        return Err(CliError::Domain("g needs four entries a,b,c,d".into()));
    };
    let g = GroupElement2::new(a, bb, cc, d)?;
    let phi = EisensteinSeries::new(gamma)?;
    let phi_g = phi.value(&iwasawa_coords(&g)?);
    let direct = q_gl2_global_apply(s, &phi, &g, cutoff, &canonical_representative, &spec)?;
    let composed = q_gl2_global_composed(s, &phi, &g, cutoff, &spec)?;
    // finite cutoff: the discrete factor is sum_{n <= N} n^{-(s+1/2)} lambda_n,
    // completed here to the full zeta product
    let z_n = truncated_eigenvalue(s, gamma, cutoff);
    let z_full = riemann_zeta(s - Complex64::i() * gamma.gamma1)? * riemann_zeta(s - Complex64::i() * gamma.gamma2)?;
    let observed = direct.value * z_full / z_n;
    let predicted = c0 * global_zeta_gl2(s, gamma)? * phi_g;
    let mut b = ReportBuilder::new();
    b.axis("s", [fz(s)]).axis("cutoff", [cutoff.to_string()]);
    let params = [("s", fz(s)), ("cutoff", cutoff.to_string()), ("c0", fz(c0))];
    b.point("eigenvalue", &params, observed, predicted, rel(observed, predicted), tol);
    b.point("direct vs composed", &params, direct.value, composed.value, rel(direct.value, composed.value), tol);
    Ok(b)
}

fn eq_all_common(r: &Reader, shifted: bool) -> CliResult<ReportBuilder> {
    let s = r.complex("s", c(3.0, 0.0))?;
    let cutoff = at_least(r, "cutoff", 50, 1)?;
    let order = at_least(r, "order", 16, 2)? as usize;
    let c0 = r.complex("c0", c(PI, 0.0))?;
    let tol = r.f64("tol", 1e-2)?;
    let rep = verify_eq_all(s, cutoff, &QuadratureSpec::new(Scheme::DoubleExponential, order))?;
    let (rhs, label) = if shifted {
        // complete the determinant cutoff: the coset sum carries
        // sum_{n <= N} sigma(n) n^{-s} in place of zeta(s) zeta(s-1)
        let partial: Complex64 = (1..=cutoff).map(|n| sigma(n) as f64 * (-s * (n as f64).ln()).exp()).sum();
        let full = riemann_zeta(s)? * riemann_zeta(s - 1.0)?;
        (completed_zeta(s)? * completed_zeta(s - 1.0)? * partial / full, "lhs / (zeta_hat(s) zeta_hat(s-1)), cutoff completed")
    } else {
        (rep.rhs, "lhs / zeta_hat(s)^2")
    };
    let ratio = rep.lhs.value / rhs;
    let mut b = ReportBuilder::new();
    b.axis("s", [fz(s)]).axis("cutoff", [cutoff.to_string()]);
    b.point(label, &[("s", fz(s)), ("cutoff", cutoff.to_string())], ratio, c0, rel(ratio, c0), tol);
    Ok(b)
}

fn eq_all(r: &Reader) -> CliResult<ReportBuilder> {
    eq_all_common(r, false)
}

fn eq_all_shifted(r: &Reader) -> CliResult<ReportBuilder> {
    eq_all_common(r, true)
}

fn gl2_functional_eq(r: &Reader) -> CliResult<ReportBuilder> {
    let s = r.complex("s", c(0.4, 0.0))?;
    let gamma = spectral(r, "gamma1", "gamma2", SpectralParamGL2::new(c(0.3, 0.0), c(-0.2, 0.0)))?;
    let tol = r.f64("tol", 1e-8)?;
    let lhs = global_zeta_gl2(1.0 - s, gamma.negated())?;
    let rhs = global_zeta_gl2(s, gamma)?;
    let mut b = ReportBuilder::new();
    b.axis("s", [fz(s)]);
    b.point("completed GL2 zeta", &[("s", fz(s))], lhs, rhs, (lhs - rhs).norm(), tol);
    Ok(b)
}

fn congruence_limit(r: &Reader) -> CliResult<ReportBuilder> {
    let s = r.complex("s", c(2.0, 0.0))?;
    let levels = r.u64_list("levels", &[3, 10, 30, 100])?;
    let (x_lo, x_hi) = (r.f64("x-min", 0.5)?, r.f64("x-max", 2.0)?);
    let nx = at_least(r, "grid", 61, 1)?;
    let xs = linspace(x_lo, x_hi, nx);
    let mut b = ReportBuilder::new();
    b.axis("level", levels.iter().map(u64::to_string)).axis("x", [format!("{nx} points in [{x_lo}, {x_hi}]")]);
    let mut prev: Option<(u64, f64)> = None;
    for &n in &levels {
        let modulus = u32::try_from(n).map_err(|_| CliError::Domain(format!("level {n} too large")))?;
        let mut sup = f64::NEG_INFINITY;
        for &x in &xs {
            sup = sup.max(congruence_gap_ln(s, modulus, GL1Point::new(x)?)?);
        }
        // ln of the sup gap; the next level must be strictly smaller
        if let Some((m, p)) = prev {
            let ratio = (sup - p).exp();
            b.point(
                format!("level {n} after {m}"),
                &[("level", n.to_string()), ("previous", m.to_string())],
                c(sup, 0.0),
                c(p, 0.0),
                ratio,
                1.0 - 1e-12,
            );
        }
        prev = Some((n, sup));
    }
    Ok(b)
}
