use super::poles::{enumerate_poles, Pole};
use super::{merge_terms, AsymptoticExpansion, ExpansionTerm, DEFAULT_TOL};
use crate::dirichlet::SeriesSpec;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::laurent::LaurentSeries;
use crate::specfun::{gamma_laurent, zeta_laurent};
use crate::C64;

/// Guard coefficients carried beyond the pole order.
const GUARD: i32 = 2;

/// `ζ(a a_j s + b_j + b)` about `s0`: the Laurent series of ζ at the mapped
/// point, with `ε' = a a_j ε`.
fn zeta_factor_series(spec: &SeriesSpec, j: usize, pole: &Pole, order: i32) -> Result<LaurentSeries> {
    let f = spec.factors()[j];
    let scale = spec.a() * f.a as f64;
    let w0 = if pole.has_zeta_factor(j) {
        C64::new(1.0, 0.0)
    } else {
        pole.location * scale + f.b + spec.b()
    };
    Ok(zeta_laurent(w0, order)?
        .rescale(C64::new(scale, 0.0))
        .with_base(pole.location))
}

/// Residue of `Γ(s) Π_j ζ(a a_j s + b_j + b) x^{-s}` at `pole`, returned as
/// the term `x^{-s0} P(log x)`.
pub fn residue_at(spec: &SeriesSpec, pole: &Pole) -> Result<ExpansionTerm> {
    let s0 = pole.location;
    let order = pole.multiplicity as i32 + GUARD;
    let gamma_base = match pole.gamma_index() {
        Some(n) => C64::new(-(n as f64), 0.0),
        None => s0,
    };
    let mut product = gamma_laurent(gamma_base, order)?.with_base(s0);
    for j in 0..spec.k() {
        product = product.mul(&zeta_factor_series(spec, j, pole, order)?)?;
    }
    product = product.mul(&LaurentSeries::x_power_series(s0, order))?;
    let logpoly = product
        .residue()
        .map_err(|e| Error::Internal(format!("residue at {s0} lost its ε^-1 coefficient: {e}")))?;
    Ok(ExpansionTerm {
        x_exponent: C64::new(0.0, 0.0) - s0,
        logpoly,
        multiplicity: pole.multiplicity,
        gamma_index: pole.gamma_index(),
    })
}

/// Residues at every pole with `Re(s) ≥ -N - 1/2`, merged and sorted.
pub fn expand_general(spec: &SeriesSpec, n: usize) -> Result<AsymptoticExpansion> {
    expand_general_with(spec, n, Execution::default())
}

pub fn expand_general_with(spec: &SeriesSpec, n: usize, exec: Execution) -> Result<AsymptoticExpansion> {
    let enumeration = enumerate_poles(spec, n + 2, DEFAULT_TOL)?;
    let cut = -(n as f64) - 0.5;
    let probe_cut = cut - 2.0;
    let included: Vec<&Pole> = enumeration
        .poles
        .iter()
        .filter(|p| p.location.re >= cut)
        .collect();
    let probes: Vec<&Pole> = enumeration
        .poles
        .iter()
        .filter(|p| p.location.re < cut && p.location.re >= probe_cut)
        .collect();

    let terms = exec
        .map(&included, |p| residue_at(spec, p))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let omitted = exec
        .map(&probes, |p| residue_at(spec, p))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    AsymptoticExpansion {
        terms: merge_terms(terms, DEFAULT_TOL),
        omitted: merge_terms(omitted, DEFAULT_TOL),
        spec: spec.clone(),
        max_index: n,
        case_label: "general".into(),
        warnings: enumeration.warnings,
    }
    .finite()
}
