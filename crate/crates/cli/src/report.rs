//! Verification reports and their JSON / CSV forms.

use std::collections::BTreeMap;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{CliError, CliResult};

/// f64 written with 17 significant digits; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn text(self) -> String {
        if self.0.is_finite() {
            format!("{:.16e}", self.0)
        } else {
            format!("{}", self.0)
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Num(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexNum {
    pub re: Num,
    pub im: Num,
}

impl From<Complex64> for ComplexNum {
    fn from(z: Complex64) -> Self {
        ComplexNum { re: Num(z.re), im: Num(z.im) }
    }
}

impl ComplexNum {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.0, self.im.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub label: String,
    pub params: BTreeMap<String, String>,
    pub lhs: ComplexNum,
    pub rhs: ComplexNum,
    pub residual: Num,
    pub tolerance: Num,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub grid: BTreeMap<String, Vec<String>>,
    pub points: Vec<PointResult>,
    /// Residual and tolerance of the point closest to (or furthest past) its
    /// tolerance.
    pub residual: Num,
    pub tolerance: Num,
    pub pass: bool,
    pub settings: BTreeMap<String, String>,
    pub runtime_ms: u64,
}

fn load(p: &PointResult) -> f64 {
    let (r, t) = (p.residual.0, p.tolerance.0);
    if r.is_nan() {
        f64::INFINITY
    } else if t > 0.0 {
        r / t
    } else if r <= t {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Collects points in grid order.
#[derive(Debug, Clone, Default)]
pub struct ReportBuilder {
    grid: BTreeMap<String, Vec<String>>,
    points: Vec<PointResult>,
}

impl ReportBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn axis<I: IntoIterator<Item = String>>(&mut self, name: &str, values: I) -> &mut Self {
        self.grid.insert(name.to_string(), values.into_iter().collect());
        self
    }

    pub fn point(
        &mut self,
        label: impl Into<String>,
        params: &[(&str, String)],
        lhs: Complex64,
        rhs: Complex64,
        residual: f64,
        tolerance: f64,
    ) -> &mut Self {
        let pass = residual <= tolerance;
        self.points.push(PointResult {
            label: label.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            residual: Num(residual),
            tolerance: Num(tolerance),
            pass,
        });
        self
    }

    pub fn finish(self, identity: &str, settings: BTreeMap<String, String>, runtime_ms: u64) -> VerificationReport {
        let worst = self
            .points
            .iter()
            .enumerate()
            .max_by(|a, b| load(a.1).total_cmp(&load(b.1)).then(b.0.cmp(&a.0)))
            .map(|(_, p)| (p.residual, p.tolerance));
        let (residual, tolerance) = worst.unwrap_or((Num(0.0), Num(0.0)));
        let pass = !self.points.is_empty() && self.points.iter().all(|p| p.pass);
        VerificationReport {
            identity: identity.to_string(),
            grid: self.grid,
            points: self.points,
            residual,
            tolerance,
            pass,
            settings,
            runtime_ms,
        }
    }
}

/// `|a - b| / |b|`, falling back to `|a - b|` when b vanishes.
pub fn rel(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if b.norm() > 0.0 {
        d / b.norm()
    } else {
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (json|csv)")),
        }
    }
}

pub fn to_json(r: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> CliResult<VerificationReport> {
    serde_json::from_str(text).map_err(|e| CliError::Io(format!("cannot read report: {e}")))
}

pub const CSV_HEADER: [&str; 10] =
    ["identity", "label", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "tolerance", "pass"];

/// Header plus one row per grid point; params as `k=v;k=v`.
pub fn to_csv(r: &VerificationReport) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for p in &r.points {
        let params = p.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        w.write_record([
            r.identity.clone(),
            p.label.clone(),
            params,
            p.lhs.re.text(),
            p.lhs.im.text(),
            p.rhs.re.text(),
            p.rhs.im.text(),
            p.residual.text(),
            p.tolerance.text(),
            p.pass.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render(r: &VerificationReport, format: Format) -> CliResult<String> {
    match format {
        Format::Json => Ok(to_json(r)),
        Format::Csv => to_csv(r),
    }
}

/// Write to `path`, or to stdout when there is none.
pub fn emit(text: &str, path: Option<&std::path::Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}
