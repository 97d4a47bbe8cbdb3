//! Key/value settings: config file, then `--set`, then dedicated flags.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::complex::{format_complex, parse_complex};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings {
    map: BTreeMap<String, String>,
}

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    /// `key = value` lines; `#` starts a comment.
    pub fn parse_config(text: &str) -> CliResult<Self> {
        let mut out = Settings::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Domain(format!("config line {}: expected key = value", k + 1)))?;
            out.set(key.trim(), value.trim());
        }
        Ok(out)
    }

    /// `k=v` as given to `--set`.
    pub fn set_pair(&mut self, pair: &str) -> CliResult<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Domain(format!("--set expects key=value, got {pair:?}")))?;
        self.set(k.trim(), v.trim());
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.map.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    /// Later settings win.
    pub fn merged(mut self, over: &Settings) -> Settings {
        for (k, v) in &over.map {
            self.map.insert(k.clone(), v.clone());
        }
        self
    }

    pub fn as_map(&self) -> &BTreeMap<String, String> {
        &self.map
    }
}

impl From<BTreeMap<String, String>> for Settings {
    fn from(map: BTreeMap<String, String>) -> Self {
        Settings { map }
    }
}

/// Typed access with defaults. Every key read is recorded with its effective
/// value, and keys that were given but never read are rejected.
pub struct Reader<'a> {
    given: &'a Settings,
    resolved: RefCell<BTreeMap<String, String>>,
}

fn bad(key: &str, value: &str, what: &str) -> CliError {
    CliError::Domain(format!("setting {key}={value:?} is not {what}"))
}

impl<'a> Reader<'a> {
    pub fn new(given: &'a Settings) -> Self {
        Reader { given, resolved: RefCell::new(BTreeMap::new()) }
    }

    fn raw(&self, key: &str, default: String) -> String {
        let v = self.given.get(key).map(str::to_string).unwrap_or(default);
        self.resolved.borrow_mut().insert(key.to_string(), v.clone());
        v
    }

    pub fn f64(&self, key: &str, default: f64) -> CliResult<f64> {
        let v = self.raw(key, format!("{default}"));
        v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| bad(key, &v, "a finite number"))
    }

    /// A number that has no default; absent stays absent.
    pub fn opt_f64(&self, key: &str) -> CliResult<Option<f64>> {
        match self.given.get(key) {
            None => Ok(None),
            Some(_) => self.f64(key, 0.0).map(Some),
        }
    }

    pub fn u64(&self, key: &str, default: u64) -> CliResult<u64> {
        let v = self.raw(key, default.to_string());
        v.parse::<u64>().map_err(|_| bad(key, &v, "a non-negative integer"))
    }

    pub fn complex(&self, key: &str, default: Complex64) -> CliResult<Complex64> {
        let v = self.raw(key, format_complex(default));
        parse_complex(&v).ok_or_else(|| bad(key, &v, "a complex literal"))
    }

    pub fn string(&self, key: &str, default: &str) -> String {
        self.raw(key, default.to_string())
    }

    pub fn f64_list(&self, key: &str, default: &[f64]) -> CliResult<Vec<f64>> {
        let d = default.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",");
        let v = self.raw(key, d);
        v.split(',')
            .map(|p| p.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad(key, &v, "a comma-separated list of numbers"))
    }

    pub fn u64_list(&self, key: &str, default: &[u64]) -> CliResult<Vec<u64>> {
        let d = default.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let v = self.raw(key, d);
        v.split(',')
            .map(|p| p.trim().parse::<u64>().ok())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad(key, &v, "a comma-separated list of integers"))
    }

    pub fn complex_list(&self, key: &str, default: &[Complex64]) -> CliResult<Vec<Complex64>> {
        let d = default.iter().map(|z| format_complex(*z)).collect::<Vec<_>>().join(",");
        let v = self.raw(key, d);
        v.split(',')
            .map(parse_complex)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad(key, &v, "a comma-separated list of complex literals"))
    }

    /// Effective settings, or an error naming keys nobody asked for.
    pub fn finish(self) -> CliResult<BTreeMap<String, String>> {
        let resolved = self.resolved.into_inner();
        let unknown: Vec<&str> =
            self.given.as_map().keys().filter(|k| !resolved.contains_key(*k)).map(String::as_str).collect();
        if !unknown.is_empty() {
            return Err(CliError::Domain(format!("unknown setting(s): {}", unknown.join(", "))));
        }
        Ok(resolved)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_then_override() {
        let cfg = Settings::parse_config("# defaults\ns = 2.5\ncutoff=100 # small\n\n").unwrap();
        let mut flags = Settings::new();
        flags.set("cutoff", "10000");
        let all = cfg.merged(&flags);
        let r = Reader::new(&all);
        assert_eq!(r.f64("s", 3.0).unwrap(), 2.5);
        assert_eq!(r.u64("cutoff", 1).unwrap(), 10000);
        assert_eq!(r.u64("height", 500).unwrap(), 500);
        let m = r.finish().unwrap();
        assert_eq!(m["height"], "500");
        assert!(Settings::parse_config("oops").is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        let mut s = Settings::new();
        s.set("hieght", "5");
        let r = Reader::new(&s);
        r.u64("height", 1).unwrap();
        assert!(matches!(r.finish(), Err(CliError::Domain(_))));
    }
}
