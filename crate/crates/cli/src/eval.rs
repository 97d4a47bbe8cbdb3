//! `eval <object>`: one value with its error estimate.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use hecke_core::gl2_analytic::{eisenstein, eisenstein_limits, IwasawaPoint, SpectralParamGL2};
use hecke_core::gl2_arith::{coset_count, gl2_zeta, sigma};
use hecke_core::gl2_operators::{estimate_c0, global_zeta_gl2, hecke_t_apply, lambda_n, SeriesEval};
use hecke_core::numerics::Estimate;
use hecke_core::specfun::{
    archimedean_l, completed_zeta, gamma, riemann_zeta_with, theta_congruence_with, theta_constant_with, Precision,
};

use crate::complex::format_complex_exact;
use crate::error::{CliError, CliResult};
use crate::report::{ComplexNum, Num};
use crate::settings::{Reader, Settings};
use crate::suites::gamma_a;

pub const OBJECTS: &[(&str, &str)] = &[
    ("zeta", "Riemann zeta at s"),
    ("completed-zeta", "pi^{-s/2} Gamma(s/2) zeta(s)"),
    ("gamma", "Gamma(s)"),
    ("archimedean-l", "pi^{-s/2} Gamma(s/2)"),
    ("theta", "Theta(0|tau)"),
    ("theta-congruence", "level-N theta at tau"),
    ("eisenstein", "coprime Eisenstein series at (tau, t), box height H"),
    ("hecke-eigenvalue", "(T_n Phi) / Phi at (tau, t)"),
    ("lambda", "n^{1/2} sum_{ad=n} a^{i gamma1} d^{i gamma2}"),
    ("gl2-zeta", "Hecke coset zeta truncated at the cutoff"),
    ("gl2-global-zeta", "zeta_hat(s - i gamma1) zeta_hat(s - i gamma2)"),
    ("sigma", "sum of divisors of n"),
    ("coset-count", "number of Hecke cosets of determinant n"),
    ("c0", "Q_R[Phi] / (L L Phi) at (tau, t)"),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutput {
    pub object: String,
    pub value: ComplexNum,
    pub error: Num,
    pub extra: BTreeMap<String, Num>,
    pub settings: BTreeMap<String, String>,
}

impl EvalOutput {
    pub fn text(&self) -> String {
        let mut s = format!("value {}\nerror {}\n", format_complex_exact(self.value.value()), self.error.text());
        for (k, v) in &self.extra {
            s.push_str(&format!("{k} {}\n", v.text()));
        }
        s
    }

    pub fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("eval output serializes");
        s.push('\n');
        s
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn point(r: &Reader) -> CliResult<IwasawaPoint> {
    let tau = r.complex("tau", c(0.0, 1.0))?;
    let t = r.f64("t", 1.0)?;
    Ok(IwasawaPoint::new(tau.re, tau.im, t)?)
}

fn spectral(r: &Reader) -> CliResult<SpectralParamGL2> {
    let d = gamma_a();
    Ok(SpectralParamGL2::new(r.complex("gamma1", d.gamma1)?, r.complex("gamma2", d.gamma2)?))
}

fn positive(r: &Reader, key: &str, default: u64) -> CliResult<u64> {
    let v = r.u64(key, default)?;
    if v == 0 {
        return Err(CliError::Domain(format!("{key} must be positive")));
    }
    Ok(v)
}

pub fn evaluate(object: &str, settings: &Settings) -> CliResult<EvalOutput> {
    let r = Reader::new(settings);
    let mut extra = BTreeMap::new();
    let prec = Precision::default();
    let exact = |v: Complex64| Estimate::exact(v);
    let est: Estimate = match object {
        "zeta" => riemann_zeta_with(r.complex("s", c(2.0, 0.0))?, &prec)?,
        "completed-zeta" => exact(completed_zeta(r.complex("s", c(2.0, 0.0))?)?),
        "gamma" => exact(gamma(r.complex("s", c(2.0, 0.0))?)?),
        "archimedean-l" => exact(archimedean_l(r.complex("s", c(2.0, 0.0))?)?),
        "theta" => theta_constant_with(r.complex("tau", c(0.0, 1.0))?, &prec)?,
        "theta-congruence" => {
            let m = u32::try_from(positive(&r, "modulus", 3)?)
                .map_err(|_| CliError::Domain("modulus too large".into()))?;
            theta_congruence_with(m, r.complex("tau", c(0.0, 1.0))?, &prec)?
        }
        "eisenstein" => eisenstein(spectral(&r)?, &point(&r)?, positive(&r, "height", 300)?)?,
        "hecke-eigenvalue" => {
            let n = positive(&r, "n", 2)?;
            let g = spectral(&r)?;
            let p = point(&r)?;
            let h = r.u64("height", 500)?;
            let phi = eisenstein_limits(g, &p, h)?.0;
            let tn = hecke_t_apply(n, g, &p, SeriesEval::Box(h))?;
            let v = tn.value / phi.value;
            let err = (tn.error + v.norm() * phi.error) / phi.value.norm();
            let lam = lambda_n(n, g);
            extra.insert("lambda_re".to_string(), Num(lam.re));
            extra.insert("lambda_im".to_string(), Num(lam.im));
            extra.insert("residual".to_string(), Num(((v - lam) / lam).norm()));
            Estimate::new(v, err)
        }
        "lambda" => exact(lambda_n(positive(&r, "n", 2)?, spectral(&r)?)),
        "gl2-zeta" => gl2_zeta(r.complex("s", c(2.5, 0.0))?, positive(&r, "cutoff", 10_000)?)?,
        "gl2-global-zeta" => exact(global_zeta_gl2(r.complex("s", c(3.0, 0.0))?, spectral(&r)?)?),
        "sigma" => exact(c(sigma(positive(&r, "n", 6)?) as f64, 0.0)),
        "coset-count" => exact(c(coset_count(positive(&r, "n", 6)?) as f64, 0.0)),
        "c0" => {
            let s = r.complex("s", c(3.0, 0.0))?;
            let g = spectral(&r)?;
            let p = point(&r)?;
            let order = r.u64("order", 6)? as usize;
            let panels = r.u64("subdivisions", 8)? as usize;
            let spec = hecke_core::numerics::QuadratureSpec::new(
                hecke_core::numerics::Scheme::GaussLegendreComposite,
                order,
            )
            .with_subdivisions(panels);
            estimate_c0(s, g, &[p], &spec)?[0]
        }
        other => {
            let names: Vec<&str> = OBJECTS.iter().map(|o| o.0).collect();
            return Err(CliError::Domain(format!("unknown object {other:?}; available: {}", names.join(", "))));
        }
    };
    let tol = r.opt_f64("tol")?;
    let settings = r.finish()?;
    if let Some(tol) = tol {
        if !(est.error <= tol) {
            return Err(CliError::Precision(format!(
                "{object}: error estimate {:.3e} exceeds tol {tol:.3e}",
                est.error
            )));
        }
    }
    Ok(EvalOutput { object: object.to_string(), value: est.value.into(), error: Num(est.error), extra, settings })
}
