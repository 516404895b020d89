use super::{BoundKind, OracleKind, OracleResult};
use crate::dirichlet::{coeffs_product, tail_bound_with, GrowthHint, SeriesSpec, CALIBRATION_PREFIX};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::sum::{ComplexSum, NeumaierSum};

/// Largest number of terms [`direct_sum`] will add.
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

const BLOCK: usize = 8192;

/// Smallest `N ≤ cap` with `tail(N) ≤ tol`; the tail bound is
/// non-increasing in `N`.
fn terms_needed(growth: GrowthHint, spec: &SeriesSpec, x: f64, tol: f64, cap: usize) -> Result<usize> {
    let tail = |n: usize| tail_bound_with(growth, spec, x, n);
    let at_cap = tail(cap);
    if at_cap > tol {
        return Err(Error::OracleLimit {
            x,
            cap,
            achievable: at_cap,
        });
    }
    let mut hi = 1;
    while tail(hi) > tol {
        hi = (hi * 2).min(cap);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail(mid) > tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi.max(1))
}

/// `S(x) = Σ f(n) n^{-b} exp(-n^a x)` summed until the tail bound drops below
/// `tol`.
pub fn direct_sum(spec: &SeriesSpec, x: f64, tol: f64) -> Result<OracleResult> {
    direct_sum_with(spec, x, tol, DEFAULT_TERM_CAP, Execution::default())
}

pub fn direct_sum_with(
    spec: &SeriesSpec,
    x: f64,
    tol: f64,
    cap: usize,
    exec: Execution,
) -> Result<OracleResult> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("x = {x} must be positive")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let prefix = coeffs_product(spec, CALIBRATION_PREFIX)?;
    let mut n = terms_needed(prefix.growth(), spec, x, tol, cap)?;
    // The growth constant is recalibrated on the full range; widen N if the
    // larger constant demands it.
    let (coeffs, tail) = loop {
        let coeffs = coeffs_product(spec, n.max(CALIBRATION_PREFIX))?;
        let tail = coeffs.tail_bound(spec, x, n);
        if tail <= tol {
            break (coeffs, tail);
        }
        let wider = terms_needed(coeffs.growth(), spec, x, tol, cap)?;
        if wider <= n {
            break (coeffs, tail);
        }
        n = wider;
    };

    let f = &coeffs.values()[..n];
    let a = spec.a();
    let b = spec.b();
    let blocks = n.div_ceil(BLOCK);
    let partial = exec.map_range(blocks, |k| {
        let start = k * BLOCK;
        let end = (start + BLOCK).min(n);
        let mut sum = ComplexSum::new();
        let mut weight = NeumaierSum::new();
        // Smallest terms first within a block.
        for i in (start..end).rev() {
            let m = (i + 1) as f64;
            let ln_m = m.ln();
            let y = m.powf(a) * x;
            let t = f[i] * (-b * ln_m - y).exp();
            sum.add(t);
            weight.add(t.norm() * (8.0 + y + b.norm() * ln_m));
        }
        (sum.value(), weight.value())
    });
    let mut total = ComplexSum::new();
    let mut weight = 0.0;
    for (s, w) in partial.into_iter().rev() {
        total.add(s);
        weight += w;
    }
    Ok(OracleResult {
        value: total.value(),
        error_bound: tail + weight * f64::EPSILON,
        kind: OracleKind::DirectSum,
        bound: BoundKind::Calibrated,
        evaluations: n,
    })
}
