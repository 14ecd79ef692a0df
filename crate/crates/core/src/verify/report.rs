use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Below this `|rhs|`, rows compare absolute instead of relative error.
pub const ABS_FALLBACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexRecord {
    fn from(c: Complex64) -> Self {
        Self { re: c.re, im: c.im }
    }
}

impl From<ComplexRecord> for Complex64 {
    fn from(c: ComplexRecord) -> Self {
        Complex64::new(c.re, c.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub case_id: String,
    pub inputs: Value,
    pub lhs: ComplexRecord,
    pub rhs: ComplexRecord,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportRow {
    /// Compares `lhs` against the reference `rhs`.
    pub fn compare(
        case_id: impl Into<String>,
        inputs: Value,
        lhs: Complex64,
        rhs: Complex64,
        tol: f64,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = if rhs.norm() < ABS_FALLBACK {
            abs_err
        } else {
            abs_err / rhs.norm()
        };
        let finite = abs_err.is_finite() && rel_err.is_finite();
        Self {
            case_id: case_id.into(),
            inputs,
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_err: if finite { abs_err } else { f64::MAX },
            rel_err: if finite { rel_err } else { f64::MAX },
            tol,
            pass: finite && rel_err <= tol,
            error: (!finite).then(|| "non-finite comparison".to_string()),
        }
    }

    /// A row whose evaluation failed; it never passes.
    pub fn failed(
        case_id: impl Into<String>,
        inputs: Value,
        tol: f64,
        error: impl ToString,
    ) -> Self {
        let zero = ComplexRecord { re: 0.0, im: 0.0 };
        Self {
            case_id: case_id.into(),
            inputs,
            lhs: zero,
            rhs: zero,
            abs_err: f64::MAX,
            rel_err: f64::MAX,
            tol,
            pass: false,
            error: Some(error.to_string()),
        }
    }

    /// `compare` on a pair of fallible evaluations.
    pub fn from_results(
        case_id: impl Into<String>,
        inputs: Value,
        lhs: crate::Result<Complex64>,
        rhs: crate::Result<Complex64>,
        tol: f64,
    ) -> Self {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => Self::compare(case_id, inputs, l, r, tol),
            (Err(e), _) | (_, Err(e)) => Self::failed(case_id, inputs, tol, e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_rel_err: f64,
    pub wall_time_ms: u64,
}

impl Summary {
    pub fn from_rows(rows: &[ReportRow], wall_time_ms: u64) -> Self {
        let passed = rows.iter().filter(|r| r.pass).count();
        Self {
            total: rows.len(),
            passed,
            failed: rows.len() - passed,
            max_rel_err: rows.iter().map(|r| r.rel_err).fold(0.0, f64::max),
            wall_time_ms,
        }
    }
}

/// Gating rows decide the outcome; informational rows and notes are reported
/// alongside without affecting it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub rows: Vec<ReportRow>,
    #[serde(default)]
    pub informational: Vec<ReportRow>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(
        suite: impl Into<String>,
        mut rows: Vec<ReportRow>,
        mut informational: Vec<ReportRow>,
        notes: Vec<String>,
        wall_time_ms: u64,
    ) -> Self {
        rows.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        informational.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        let summary = Summary::from_rows(&rows, wall_time_ms);
        Self {
            suite: suite.into(),
            rows,
            informational,
            notes,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Gating rows whose case id starts with `prefix`.
    pub fn group<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a ReportRow> + 'a {
        self.rows
            .iter()
            .filter(move |r| r.case_id.starts_with(prefix))
    }

    pub fn informational_group<'a>(
        &'a self,
        prefix: &'a str,
    ) -> impl Iterator<Item = &'a ReportRow> + 'a {
        self.informational
            .iter()
            .filter(move |r| r.case_id.starts_with(prefix))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    /// One line per row, complex fields flattened; `kind` separates gating
    /// from informational rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "kind,case_id,inputs,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tol,pass,error\n",
        );
        let tagged = self
            .rows
            .iter()
            .map(|r| ("gating", r))
            .chain(self.informational.iter().map(|r| ("informational", r)));
        for (kind, r) in tagged {
            let _ = writeln!(
                out,
                "{kind},{},{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{},{}",
                csv_field(&r.case_id),
                csv_field(&r.inputs.to_string()),
                r.lhs.re,
                r.lhs.im,
                r.rhs.re,
                r.rhs.im,
                r.abs_err,
                r.rel_err,
                r.tol,
                r.pass,
                csv_field(r.error.as_deref().unwrap_or("")),
            );
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(crate) fn c64_json(c: Complex64) -> Value {
    serde_json::json!({ "re": c.re, "im": c.im })
}

pub(crate) fn c64_vec_json(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|&c| c64_json(c)).collect())
}
