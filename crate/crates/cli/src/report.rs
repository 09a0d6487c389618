//! Verification report rows and their renderings.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub id: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    /// `None` for exact comparisons and failed evaluations.
    pub abs_error: Option<f64>,
    pub rel_error: Option<f64>,
    /// `None` for exact comparisons.
    pub tolerance: Option<f64>,
    pub pass: bool,
}

pub fn complex_text(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

impl ReportRow {
    /// Exact comparison of two canonical renderings.
    pub fn exact(id: impl Into<String>, inputs: impl Into<String>, expected: String, actual: String) -> Self {
        let pass = expected == actual;
        Self { id: id.into(), inputs: inputs.into(), expected, actual, abs_error: None, rel_error: None, tolerance: None, pass }
    }

    /// Numeric comparison passing when `|actual - expected| <= tol · max(|expected|, floor)`.
    pub fn numeric<E: std::fmt::Display>(
        id: impl Into<String>,
        inputs: impl Into<String>,
        expected: Complex64,
        actual: Result<Complex64, E>,
        tol: f64,
        floor: f64,
    ) -> Self {
        let (id, inputs) = (id.into(), inputs.into());
        match actual {
            Ok(v) => {
                let abs = (v - expected).norm();
                let rel = abs / expected.norm().max(floor);
                let pass = rel <= tol;
                Self {
                    id,
                    inputs,
                    expected: complex_text(expected),
                    actual: complex_text(v),
                    abs_error: abs.is_finite().then_some(abs),
                    rel_error: rel.is_finite().then_some(rel),
                    tolerance: Some(tol),
                    pass: pass && rel.is_finite(),
                }
            }
            Err(e) => Self {
                id,
                inputs,
                expected: complex_text(expected),
                actual: format!("error: {e}"),
                abs_error: None,
                rel_error: None,
                tolerance: Some(tol),
                pass: false,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub rows: Vec<ReportRow>,
}

impl Report {
    /// Sorts rows by id so the order never depends on scheduling.
    pub fn new(suite: &str, seed: u64, mut rows: Vec<ReportRow>) -> Self {
        rows.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = rows.iter().all(|r| r.pass);
        Self { suite: suite.to_string(), seed, passed, rows }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {})", self.suite, self.seed);
        for r in &self.rows {
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            let err = match (r.rel_error, r.tolerance) {
                (Some(e), Some(t)) => format!(" rel {e:.2e} <= {t:.0e}"),
                (None, None) => " exact".to_string(),
                _ => String::new(),
            };
            let _ = write!(out, "{verdict} {}{err}", r.id);
            if !r.pass {
                let _ = write!(out, " [inputs {}; expected {}; actual {}]", r.inputs, r.expected, r.actual);
            }
            out.push('\n');
        }
        let failed = self.rows.iter().filter(|r| !r.pass).count();
        let _ = writeln!(out, "{} rows, {} failed", self.rows.len(), failed);
        out
    }
}
