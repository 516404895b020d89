//! Asymptotic expansions `S(x) ~ Σ x^p P(log x)` as `x → 0⁺`.
//!
//! [`expand_general`] sums residues of `Γ(s) Π_j ζ(a a_j s + b_j + b) x^{-s}`
//! computed with truncated Laurent arithmetic; [`corollary2`],
//! [`corollary3`] and [`corollary4`] build the same expansions for `ζ(s)`,
//! `ζ(s)²` and `ζ(s)ζ(s-α)` from closed forms.

mod closed_form;
mod engine;
mod poles;

use std::fmt;

use crate::dirichlet::SeriesSpec;
use crate::error::{Error, Result};
use crate::laurent::LogPolynomial;
use crate::sum::ComplexSum;
use crate::C64;

pub use closed_form::{corollary2, corollary3, corollary4};
pub use engine::{expand_general, expand_general_with, residue_at};
pub use poles::{enumerate_poles, Pole, PoleEnumeration, PoleSource};

/// Absolute tolerance for pole coincidence and case classification.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Coefficients at or below this magnitude count as zero.
pub const ZERO_TOL: f64 = 1e-13;

/// One term `x^p · P(log x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionTerm {
    pub x_exponent: C64,
    pub logpoly: LogPolynomial,
    /// Order of the pole the term comes from.
    pub multiplicity: usize,
    /// `Some(n)` when the pole is the Γ pole at `-n`.
    pub gamma_index: Option<u64>,
}

impl ExpansionTerm {
    pub fn eval(&self, x: f64) -> C64 {
        let log_x = x.ln();
        (self.x_exponent * log_x).exp() * self.logpoly.eval(C64::new(log_x, 0.0))
    }

    /// All coefficients at most [`ZERO_TOL`] in magnitude.
    pub fn is_zero(&self) -> bool {
        self.logpoly.max_abs() <= ZERO_TOL
    }
}

impl fmt::Display for ExpansionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.x_exponent;
        if p.im == 0.0 {
            write!(f, "x^{} · ({})", p.re, self.logpoly)
        } else {
            write!(f, "x^({p}) · ({})", self.logpoly)
        }
    }
}

/// Terms ordered by increasing `Re(p)`, plus the first omitted terms used by
/// [`AsymptoticExpansion::error_estimate`].
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticExpansion {
    pub terms: Vec<ExpansionTerm>,
    pub omitted: Vec<ExpansionTerm>,
    pub spec: SeriesSpec,
    pub max_index: usize,
    pub case_label: String,
    pub warnings: Vec<String>,
}

/// Heuristic size of the remainder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorEstimate {
    pub magnitude: f64,
    /// Every power term beyond the leading block vanishes, so the remainder
    /// is smaller than any power of `x`.
    pub beyond_all_orders: bool,
}

impl AsymptoticExpansion {
    /// `Σ x^p P(log x)`, smallest contributions first.
    pub fn evaluate(&self, x: f64) -> C64 {
        let mut values: Vec<C64> = self.terms.iter().map(|t| t.eval(x)).collect();
        values.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        values.into_iter().collect::<ComplexSum>().value()
    }

    /// Smallest included power-series term (Γ poles at `-n`, `n ≥ 1`, zero
    /// terms included) plus the first non-zero omitted term.
    pub fn error_estimate(&self, x: f64) -> ErrorEstimate {
        let tail: Vec<&ExpansionTerm> = self
            .terms
            .iter()
            .filter(|t| t.gamma_index.is_some_and(|n| n >= 1))
            .collect();
        let smallest = tail
            .iter()
            .map(|t| if t.is_zero() { 0.0 } else { t.eval(x).norm() })
            .fold(f64::INFINITY, f64::min);
        let smallest = if smallest.is_finite() { smallest } else { 0.0 };
        let omitted = self
            .omitted
            .iter()
            .find(|t| !t.is_zero())
            .map_or(0.0, |t| t.eval(x).norm());
        let flat = tail.iter().all(|t| t.is_zero()) && omitted == 0.0;
        ErrorEstimate {
            magnitude: if flat { 0.0 } else { smallest + omitted },
            beyond_all_orders: flat,
        }
    }

    /// Fails when a coefficient overflowed, e.g. `ζ(-m)/m!` for large `m`.
    pub(crate) fn finite(self) -> Result<Self> {
        let bad = self.terms.iter().chain(&self.omitted).find(|t| {
            t.logpoly
                .coeffs()
                .iter()
                .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        });
        match bad {
            Some(t) => Err(Error::Overflow {
                order: self.max_index,
                exponent: t.x_exponent,
            }),
            None => Ok(self),
        }
    }

    /// Exponents of the included terms.
    pub fn exponents(&self) -> Vec<C64> {
        self.terms.iter().map(|t| t.x_exponent).collect()
    }
}

/// Sorts by `Re(p)` (then `Im(p)`) and merges terms whose exponents agree
/// within `tol`.
pub(crate) fn merge_terms(mut terms: Vec<ExpansionTerm>, tol: f64) -> Vec<ExpansionTerm> {
    terms.sort_by(|a, b| {
        a.x_exponent
            .re
            .total_cmp(&b.x_exponent.re)
            .then(a.x_exponent.im.total_cmp(&b.x_exponent.im))
    });
    let mut out: Vec<ExpansionTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out
            .iter_mut()
            .find(|o| (o.x_exponent - t.x_exponent).norm() <= tol)
        {
            Some(o) => {
                o.logpoly = &o.logpoly + &t.logpoly;
                o.multiplicity = o.multiplicity.max(t.multiplicity);
                o.gamma_index = o.gamma_index.or(t.gamma_index);
            }
            None => out.push(t),
        }
    }
    out
}

/// `x = -log q` for `0 < q < 1`.
pub fn q_to_x(q: f64) -> Result<f64> {
    if q > 0.0 && q < 1.0 {
        Ok(-(q - 1.0).ln_1p())
    } else {
        Err(Error::Domain(format!("q = {q} must lie in (0, 1)")))
    }
}

/// `evaluate` as a free function.
pub fn evaluate(expansion: &AsymptoticExpansion, x: f64) -> C64 {
    expansion.evaluate(x)
}

/// `error_estimate` as a free function.
pub fn error_estimate(expansion: &AsymptoticExpansion, x: f64) -> ErrorEstimate {
    expansion.error_estimate(x)
}
