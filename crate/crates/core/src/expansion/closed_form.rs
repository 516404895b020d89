//! Closed-form expansions for `ζ(s)`, `ζ(s)²` and `ζ(s)ζ(s-α)`.
//!
//! Each constructor writes the terms out explicitly instead of multiplying
//! Laurent series, so it is an independent check on the residue engine.

use std::f64::consts::PI;

use super::{merge_terms, AsymptoticExpansion, ExpansionTerm, DEFAULT_TOL};
use crate::dirichlet::SeriesSpec;
use crate::error::{Error, Result};
use crate::laurent::LogPolynomial;
use crate::specfun::{euler_gamma, gamma, polygamma, stieltjes, zeta, zeta_derivative};
use crate::C64;

fn re(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `(-1)^n / n!`
fn signed_inv_factorial(n: u64) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign / factorial(n)
}

fn digamma_int(n: u64) -> Result<C64> {
    polygamma(0, re(n as f64))
}

/// Classifies `z` as a non-negative integer within `tol`; distances in
/// `[tol, 10·tol)` produce a warning.
fn nonneg_integer(z: C64, what: &str, warnings: &mut Vec<String>) -> Option<u64> {
    let k = z.re.round();
    if k < 0.0 {
        return None;
    }
    let d = (z - re(k)).norm();
    if d < DEFAULT_TOL {
        Some(k as u64)
    } else {
        if d < 10.0 * DEFAULT_TOL {
            warnings.push(format!(
                "{what} = {z} is within {d:e} of {k}; treated as the generic case"
            ));
        }
        None
    }
}

/// Collects terms, routing them to the included or omitted list by exponent.
struct Builder {
    spec: SeriesSpec,
    n: usize,
    terms: Vec<ExpansionTerm>,
    omitted: Vec<ExpansionTerm>,
    warnings: Vec<String>,
}

enum Slot {
    Included,
    Omitted,
    Dropped,
}

impl Builder {
    fn new(spec: SeriesSpec, n: usize) -> Self {
        Self {
            spec,
            n,
            terms: Vec::new(),
            omitted: Vec::new(),
            warnings: Vec::new(),
        }
    }

    /// Highest Γ index worth computing.
    fn gamma_range(&self) -> std::ops::RangeInclusive<u64> {
        0..=(self.n as u64 + 2)
    }

    fn slot(&self, exponent: C64) -> Slot {
        let cut = self.n as f64 + 0.5;
        if exponent.re <= cut {
            Slot::Included
        } else if exponent.re <= cut + 2.0 {
            Slot::Omitted
        } else {
            Slot::Dropped
        }
    }

    fn wanted(&self, exponent: C64) -> bool {
        !matches!(self.slot(exponent), Slot::Dropped)
    }

    fn push(&mut self, exponent: C64, coeffs: Vec<C64>, multiplicity: usize, gamma_index: Option<u64>) {
        let term = ExpansionTerm {
            x_exponent: exponent,
            logpoly: LogPolynomial::new(coeffs),
            multiplicity,
            gamma_index,
        };
        match self.slot(exponent) {
            Slot::Included => self.terms.push(term),
            Slot::Omitted => self.omitted.push(term),
            Slot::Dropped => {}
        }
    }

    /// `(-x)^n / n! · value`.
    fn push_gamma(&mut self, n: u64, value: C64) {
        self.push(re(n as f64), vec![value * signed_inv_factorial(n)], 1, Some(n));
    }

    fn finish(self, label: String) -> Result<AsymptoticExpansion> {
        AsymptoticExpansion {
            terms: merge_terms(self.terms, DEFAULT_TOL),
            omitted: merge_terms(self.omitted, DEFAULT_TOL),
            spec: self.spec,
            max_index: self.n,
            case_label: label,
            warnings: self.warnings,
        }
        .finite()
    }
}

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("a = {a} must be positive")))
    }
}

/// `Σ n^{-b} e^{-n^a x}`.
///
/// Generic case: `x^{(b-1)/a} Γ((1-b)/a)/a + Σ (-x)^n ζ(b-an)/n!`.  When
/// `b = 1 + a n₀` the `n₀` term becomes
/// `(-x)^{n₀} (γa + ψ(n₀+1) - log x) / (a n₀!)`.
pub fn corollary2(a: f64, b: C64, n: usize) -> Result<AsymptoticExpansion> {
    check_a(a)?;
    let spec = SeriesSpec::zeta(a, b)?;
    let mut out = Builder::new(spec, n);
    let n0 = nonneg_integer((b - 1.0) / a, "(b-1)/a", &mut out.warnings);
    let g = euler_gamma();

    for k in out.gamma_range() {
        if Some(k) == n0 {
            let c = signed_inv_factorial(k) / a;
            let c0 = (re(g * a) + digamma_int(k + 1)?) * c;
            out.push(re(k as f64), vec![c0, re(-c)], 2, Some(k));
        } else {
            out.push_gamma(k, zeta(b - a * k as f64)?);
        }
    }
    if n0.is_none() {
        let p = (b - 1.0) / a;
        if out.wanted(p) {
            out.push(p, vec![gamma(-p)? / a], 1, None);
        }
    }
    let label = match n0 {
        Some(k) => format!("zeta/log n0={k}"),
        None => "zeta/generic".into(),
    };
    out.finish(label)
}

/// `Σ d(n) n^{-b} e^{-n^a x}`.
///
/// Generic case: a double pole at `(1-b)/a` contributes
/// `x^{(b-1)/a} Γ((1-b)/a) (ψ((1-b)/a) + 2γa - log x) / a²`.  When
/// `b = 1 + a m` that pole merges with Γ's pole at `-m` into a triple pole.
pub fn corollary3(a: f64, b: C64, n: usize) -> Result<AsymptoticExpansion> {
    check_a(a)?;
    let spec = SeriesSpec::zeta_squared(a, b)?;
    let mut out = Builder::new(spec, n);
    let m = nonneg_integer((b - 1.0) / a, "(b-1)/a", &mut out.warnings);
    let g = euler_gamma();

    for k in out.gamma_range() {
        if Some(k) == m {
            let psi = digamma_int(k + 1)?;
            let psi1 = polygamma(1, re(k as f64 + 1.0))?;
            let g1 = stieltjes(1)?;
            let ag = a * g;
            let c0 =
                re(ag * ag - 2.0 * a * a * g1 + PI * PI / 6.0) + psi * (2.0 * ag) + (psi * psi - psi1) * 0.5;
            let c1 = -psi - 2.0 * ag;
            let c2 = re(0.5);
            let scale = signed_inv_factorial(k) / (a * a);
            out.push(re(k as f64), vec![c0 * scale, c1 * scale, c2 * scale], 3, Some(k));
        } else {
            let z = zeta(b - a * k as f64)?;
            out.push_gamma(k, z * z);
        }
    }
    if m.is_none() {
        let p = (b - 1.0) / a;
        if out.wanted(p) {
            let s0 = -p;
            let scale = gamma(s0)? / (a * a);
            let c0 = (polygamma(0, s0)? + 2.0 * g * a) * scale;
            out.push(p, vec![c0, -scale], 2, None);
        }
    }
    let label = match m {
        Some(k) => format!("zeta^2/triple m={k}"),
        None => "zeta^2/double".into(),
    };
    out.finish(label)
}

/// `(-x)^m (a ζ'(w) + ζ(w)(γa + ψ(m+1) - log x)) / (a m!)`: a Γ pole that
/// coincides with the pole of one zeta factor while the other factor sits
/// at `w`.
fn double_block(out: &mut Builder, a: f64, m: u64, w: C64) -> Result<()> {
    if !out.wanted(re(m as f64)) {
        return Ok(());
    }
    let z = zeta(w)?;
    let dz = zeta_derivative(w, 1)?;
    let psi = digamma_int(m + 1)?;
    let c = signed_inv_factorial(m) / a;
    let c0 = (dz * a + z * (psi + euler_gamma() * a)) * c;
    out.push(re(m as f64), vec![c0, -z * c], 2, Some(m));
    Ok(())
}

/// `x^{p} Γ(-p) ζ(w) / a` for a simple zeta pole at `s = -p`.
fn simple_zeta_pole(out: &mut Builder, a: f64, p: C64, w: C64) -> Result<()> {
    if out.wanted(p) {
        let value = gamma(-p)? * zeta(w)? / a;
        out.push(p, vec![value], 1, None);
    }
    Ok(())
}

/// `Σ σ_α(n) n^{-b} e^{-n^a x}`, from `ζ(as+b) ζ(as+b-α)`.
///
/// The case depends on which of `b-1` and `b-1-α` lie in `a·ℕ₀`.  `α ≈ 0`
/// is the `ζ²` expansion.
pub fn corollary4(a: f64, b: C64, alpha: C64, n: usize) -> Result<AsymptoticExpansion> {
    check_a(a)?;
    if alpha.norm() < DEFAULT_TOL {
        let mut e = corollary3(a, b, n)?;
        e.spec = SeriesSpec::zeta_zeta_shift(a, b, alpha)?;
        return Ok(e);
    }
    let spec = SeriesSpec::zeta_zeta_shift(a, b, alpha)?;
    let mut out = Builder::new(spec, n);
    let m = nonneg_integer((b - 1.0) / a, "(b-1)/a", &mut out.warnings);
    let l = nonneg_integer((b - 1.0 - alpha) / a, "(b-1-α)/a", &mut out.warnings);
    let p1 = (b - 1.0) / a;
    let p2 = (b - 1.0 - alpha) / a;

    for k in out.gamma_range() {
        if Some(k) == m || Some(k) == l {
            continue;
        }
        let w = b - a * k as f64;
        out.push_gamma(k, zeta(w)? * zeta(w - alpha)?);
    }
    match m {
        Some(m) => double_block(&mut out, a, m, re(1.0) - alpha)?,
        None => simple_zeta_pole(&mut out, a, p1, re(1.0) - alpha)?,
    }
    match l {
        Some(l) => double_block(&mut out, a, l, re(1.0) + alpha)?,
        None => simple_zeta_pole(&mut out, a, p2, re(1.0) + alpha)?,
    }
    let label = match (m, l) {
        (None, None) => "sigma/generic".to_string(),
        (Some(m), None) => format!("sigma/first m={m}"),
        (None, Some(l)) => format!("sigma/second m={l}"),
        (Some(m), Some(l)) => format!("sigma/both m={m} l={l}"),
    };
    out.finish(label)
}
