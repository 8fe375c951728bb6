//! Machine-readable `key=value` report lines.

use std::fmt;

use crate::metrics::FidelityReport;

/// Nine significant digits; scientific notation below 1e-3 in magnitude.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.8e}");
    if v.abs() < 1e-3 {
        return sci;
    }
    // Exponent after rounding to nine digits decides the decimals.
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    let decimals = (8 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    lines: Vec<(&'static str, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(mut self, key: &'static str, value: impl Into<String>) -> Self {
        self.lines.push((key, value.into()));
        self
    }

    pub fn float(self, key: &'static str, value: f64) -> Self {
        self.text(key, format_float(value))
    }

    pub fn int(self, key: &'static str, value: usize) -> Self {
        self.text(key, value.to_string())
    }

    pub fn fidelity(self, r: &FidelityReport) -> Self {
        self.float("mse", r.mse).float("snr_db", r.snr_db).int("n", r.n)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
