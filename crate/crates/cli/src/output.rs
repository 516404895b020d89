//! JSON, CSV and text renderings.
//!
//! Complex numbers are `{"re": .., "im": ..}` objects in JSON.  CSV carries
//! real parts only and raises the `complex` flag when an imaginary part
//! exceeds [`IMAG_TOL`].

use std::fmt::Write as _;

use qseries::expansion::{AsymptoticExpansion, ErrorEstimate, ExpansionTerm};
use qseries::laurent::LogPolynomial;
use qseries::oracle::OracleResult;
use qseries::sum::ComplexSum;
use qseries::C64;
use serde::{Deserialize, Serialize};

use crate::config::Point;
use crate::error::CliError;

pub const IMAG_TOL: f64 = 1e-10;

pub const CSV_HEADER: [&str; 9] = [
    "x",
    "q",
    "oracle",
    "oracle_err",
    "expansion",
    "abs_err",
    "est_err",
    "order",
    "flags",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Complex {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<Complex> for C64 {
    fn from(z: Complex) -> Self {
        C64::new(z.re, z.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub x_exponent: Complex,
    /// Coefficients of `log(x)^0, log(x)^1, ...`, one per order of the pole.
    pub log_coeffs: Vec<Complex>,
}

/// Serialized form of an expansion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionDoc {
    pub case: String,
    pub terms: Vec<TermDoc>,
    pub warnings: Vec<String>,
}

impl From<&AsymptoticExpansion> for ExpansionDoc {
    fn from(e: &AsymptoticExpansion) -> Self {
        let terms = e
            .terms
            .iter()
            .map(|t| {
                let len = t.multiplicity.max(t.logpoly.coeffs().len()).max(1);
                TermDoc {
                    x_exponent: t.x_exponent.into(),
                    log_coeffs: (0..len).map(|m| t.logpoly.coeff(m).into()).collect(),
                }
            })
            .collect();
        Self {
            case: e.case_label.clone(),
            terms,
            warnings: e.warnings.clone(),
        }
    }
}

impl ExpansionDoc {
    /// Sums the terms exactly as [`AsymptoticExpansion::evaluate`] does.
    pub fn evaluate(&self, x: f64) -> C64 {
        let mut values: Vec<C64> = self
            .terms
            .iter()
            .map(|t| {
                let term = ExpansionTerm {
                    x_exponent: t.x_exponent.into(),
                    logpoly: LogPolynomial::new(t.log_coeffs.iter().map(|&c| c.into()).collect()),
                    multiplicity: t.log_coeffs.len(),
                    gamma_index: None,
                };
                term.eval(x)
            })
            .collect();
        values.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        values.into_iter().collect::<ComplexSum>().value()
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

pub fn expansion_text(e: &AsymptoticExpansion) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}  [{}]", e.spec, e.case_label);
    for t in &e.terms {
        let _ = writeln!(s, "  {t}");
    }
    for w in &e.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

/// One evaluation of the expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRow {
    pub point: Point,
    pub order: usize,
    pub expansion: C64,
    pub estimate: ErrorEstimate,
}

/// One comparison of the expansion against the direct sum.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub point: Point,
    pub order: usize,
    pub expansion: C64,
    pub estimate: ErrorEstimate,
    pub oracle: Result<OracleResult, String>,
}

impl CompareRow {
    pub fn abs_err(&self) -> Option<f64> {
        self.oracle
            .as_ref()
            .ok()
            .map(|o| (self.expansion - o.value).norm())
    }

    /// `abs_err ≤ 10 · (est_err + oracle_err)`; a failed oracle fails the row.
    pub fn passed(&self) -> bool {
        match (&self.oracle, self.abs_err()) {
            (Ok(o), Some(err)) => err <= 10.0 * (self.estimate.magnitude + o.error_bound),
            _ => false,
        }
    }

    pub fn flags(&self) -> Vec<&'static str> {
        let mut flags = Vec::new();
        if self.estimate.beyond_all_orders {
            flags.push("beyond-all-orders");
        }
        let oracle_im = self.oracle.as_ref().map_or(0.0, |o| o.value.im);
        if self.expansion.im.abs() > IMAG_TOL || oracle_im.abs() > IMAG_TOL {
            flags.push("complex");
        }
        if self.oracle.is_err() {
            flags.push("oracle-error");
        } else if !self.passed() {
            flags.push("exceeds-bound");
        }
        flags
    }
}

fn eval_flags(row: &EvalRow) -> Vec<&'static str> {
    let mut flags = Vec::new();
    if row.estimate.beyond_all_orders {
        flags.push("beyond-all-orders");
    }
    if row.expansion.im.abs() > IMAG_TOL {
        flags.push("complex");
    }
    flags
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Serialize(e.to_string())
}

#[derive(Serialize)]
struct CompareCsv {
    x: f64,
    q: Option<f64>,
    oracle: Option<f64>,
    oracle_err: Option<f64>,
    expansion: f64,
    abs_err: Option<f64>,
    est_err: f64,
    order: usize,
    flags: String,
}

pub fn compare_csv(rows: &[CompareRow]) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        let o = r.oracle.as_ref().ok();
        w.serialize(CompareCsv {
            x: r.point.x,
            q: r.point.q,
            oracle: o.map(|o| o.value.re),
            oracle_err: o.map(|o| o.error_bound),
            expansion: r.expansion.re,
            abs_err: r.abs_err(),
            est_err: r.estimate.magnitude,
            order: r.order,
            flags: r.flags().join(";"),
        })
        .map_err(csv_err)?;
    }
    finish(w)
}

#[derive(Serialize)]
struct CompareJson<'a> {
    x: f64,
    q: Option<f64>,
    oracle: Option<Complex>,
    oracle_err: Option<f64>,
    oracle_error: Option<&'a str>,
    expansion: Complex,
    abs_err: Option<f64>,
    est_err: f64,
    order: usize,
    flags: Vec<&'static str>,
}

pub fn compare_json(rows: &[CompareRow]) -> Result<String, CliError> {
    let docs: Vec<CompareJson> = rows
        .iter()
        .map(|r| CompareJson {
            x: r.point.x,
            q: r.point.q,
            oracle: r.oracle.as_ref().ok().map(|o| o.value.into()),
            oracle_err: r.oracle.as_ref().ok().map(|o| o.error_bound),
            oracle_error: r.oracle.as_ref().err().map(String::as_str),
            expansion: r.expansion.into(),
            abs_err: r.abs_err(),
            est_err: r.estimate.magnitude,
            order: r.order,
            flags: r.flags(),
        })
        .collect();
    Ok(serde_json::to_string_pretty(&docs)? + "\n")
}

pub fn compare_text(rows: &[CompareRow]) -> String {
    let mut s = format!(
        "{:>14} {:>10} {:>22} {:>10} {:>22} {:>10} {:>10} {:>5}  flags\n",
        "x", "q", "oracle", "oracle_err", "expansion", "abs_err", "est_err", "order"
    );
    for r in rows {
        let o = r.oracle.as_ref().ok();
        let _ = writeln!(
            s,
            "{:>14.8e} {:>10} {:>22} {:>10} {:>22.14e} {:>10} {:>10.3e} {:>5}  {}",
            r.point.x,
            r.point.q.map_or_else(|| "-".into(), |q| format!("{q}")),
            o.map_or_else(|| "-".into(), |o| format!("{:.14e}", o.value.re)),
            o.map_or_else(|| "-".into(), |o| format!("{:.3e}", o.error_bound)),
            r.expansion.re,
            r.abs_err().map_or_else(|| "-".into(), |e| format!("{e:.3e}")),
            r.estimate.magnitude,
            r.order,
            r.flags().join(";")
        );
    }
    s
}

#[derive(Serialize)]
struct EvalCsv {
    x: f64,
    q: Option<f64>,
    expansion: f64,
    est_err: f64,
    order: usize,
    flags: String,
}

pub fn eval_csv(rows: &[EvalRow]) -> Result<String, CliError> {
    let mut w = csv_writer();
    w.write_record(["x", "q", "expansion", "est_err", "order", "flags"])
        .map_err(csv_err)?;
    for r in rows {
        w.serialize(EvalCsv {
            x: r.point.x,
            q: r.point.q,
            expansion: r.expansion.re,
            est_err: r.estimate.magnitude,
            order: r.order,
            flags: eval_flags(r).join(";"),
        })
        .map_err(csv_err)?;
    }
    finish(w)
}

#[derive(Serialize)]
struct EvalJson {
    x: f64,
    q: Option<f64>,
    expansion: Complex,
    est_err: f64,
    order: usize,
    flags: Vec<&'static str>,
}

pub fn eval_json(rows: &[EvalRow]) -> Result<String, CliError> {
    let docs: Vec<EvalJson> = rows
        .iter()
        .map(|r| EvalJson {
            x: r.point.x,
            q: r.point.q,
            expansion: r.expansion.into(),
            est_err: r.estimate.magnitude,
            order: r.order,
            flags: eval_flags(r),
        })
        .collect();
    Ok(serde_json::to_string_pretty(&docs)? + "\n")
}

pub fn eval_text(rows: &[EvalRow]) -> String {
    let mut s = format!(
        "{:>14} {:>10} {:>22} {:>10} {:>5}  flags\n",
        "x", "q", "expansion", "est_err", "order"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>14.8e} {:>10} {:>22.14e} {:>10.3e} {:>5}  {}",
            r.point.x,
            r.point.q.map_or_else(|| "-".into(), |q| format!("{q}")),
            r.expansion.re,
            r.estimate.magnitude,
            r.order,
            eval_flags(r).join(";")
        );
    }
    s
}
