use std::f64::consts::PI;

use super::{BoundKind, OracleKind, OracleResult};
use crate::dirichlet::SeriesSpec;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::specfun::{gamma, zeta};
use crate::sum::ComplexSum;
use crate::C64;

/// Gauss-Kronrod 15-point abscissae on `[-1, 1]` (non-negative half, the
/// odd-indexed ones shared with the 7-point Gauss rule).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
/// Gauss 7-point weights for `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 24;
const PANEL_WIDTH: f64 = 1.0;

/// Kronrod and Gauss estimates of `∫_lo^hi f`.
fn gk15<F>(f: &F, lo: f64, hi: f64) -> Result<(C64, C64)>
where
    F: Fn(f64) -> Result<C64>,
{
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let centre = f(mid)?;
    let mut kronrod = centre * WGK[7];
    let mut gauss = centre * WG[3];
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(mid - dx)? + f(mid + dx)?;
        kronrod += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    Ok((kronrod * half, gauss * half))
}

struct Panel {
    value: C64,
    error: f64,
    evaluations: usize,
}

/// Bisects until `|K15 - G7| ≤ tol` on every piece.
fn adaptive<F>(f: &F, lo: f64, hi: f64, tol: f64, depth: u32) -> Result<Panel>
where
    F: Fn(f64) -> Result<C64>,
{
    let (k, g) = gk15(f, lo, hi)?;
    let error = (k - g).norm();
    if error <= tol || depth == 0 {
        return Ok(Panel {
            value: k,
            error,
            evaluations: 15,
        });
    }
    let mid = 0.5 * (lo + hi);
    let left = adaptive(f, lo, mid, tol / 2.0, depth - 1)?;
    let right = adaptive(f, mid, hi, tol / 2.0, depth - 1)?;
    Ok(Panel {
        value: left.value + right.value,
        error: left.error + right.error,
        evaluations: 15 + left.evaluations + right.evaluations,
    })
}

/// Lower limit for admissible contours: the Mellin abscissa, and `0` so the
/// line passes to the right of every pole of Γ.
pub fn contour_threshold(spec: &SeriesSpec) -> f64 {
    spec.mellin_abscissa().max(0.0)
}

/// `contour_threshold + 1`.
pub fn default_contour(spec: &SeriesSpec) -> f64 {
    contour_threshold(spec) + 1.0
}

/// Truncation height and the estimated size of the discarded tails, from
/// `|Γ(c+it)| ≲ √(2π) |t|^{c-1/2} e^{-π|t|/2}` and `|ζ(w)| ≤ ζ(Re w)`.
fn truncation(spec: &SeriesSpec, x: f64, c: f64, tol: f64) -> Result<(f64, f64)> {
    let mut k = (2.0 * PI).sqrt() * (1.0 / 6.0f64).exp() * x.powf(-c) / (2.0 * PI);
    for f in spec.factors() {
        let sigma = spec.a() * f.a as f64 * c + (f.b + spec.b()).re;
        k *= zeta(C64::new(sigma, 0.0))?.re;
    }
    let rho = c - 0.5;
    let tail = |t: f64| 2.0 * k * t.powf(rho) * (-PI * t / 2.0).exp() / (PI / 2.0 - rho.max(0.0) / t);
    let mut t = (2.0 * rho).max(4.0);
    while tail(t) > tol / 10.0 && t < 2000.0 {
        t += 1.0;
    }
    Ok((t, tail(t)))
}

/// `(1/2πi) ∫_{c-i∞}^{c+i∞} Γ(s) Π_j ζ(a a_j s + b_j + b) x^{-s} ds`.
pub fn barnes_integral(spec: &SeriesSpec, x: f64, c: f64, tol: f64) -> Result<OracleResult> {
    barnes_integral_with(spec, x, c, tol, Execution::default())
}

pub fn barnes_integral_with(
    spec: &SeriesSpec,
    x: f64,
    c: f64,
    tol: f64,
    exec: Execution,
) -> Result<OracleResult> {
    let required = contour_threshold(spec);
    if !(c > required) {
        return Err(Error::Precondition { c, required });
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("x = {x} must be positive")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    let (height, truncation_error) = truncation(spec, x, c, tol)?;
    let ln_x = x.ln();
    let integrand = |t: f64| -> Result<C64> {
        let s = C64::new(c, t);
        let mut v = gamma(s)? * (-s * ln_x).exp();
        for f in spec.factors() {
            v *= zeta(s * (spec.a() * f.a as f64) + f.b + spec.b())?;
        }
        Ok(v / (2.0 * PI))
    };

    let panels = (2.0 * height / PANEL_WIDTH).ceil() as usize;
    let width = 2.0 * height / panels as f64;
    let panel_tol = tol / (2.0 * panels as f64);
    let results = exec.map_range(panels, |i| {
        let lo = -height + i as f64 * width;
        adaptive(&integrand, lo, lo + width, panel_tol, MAX_DEPTH)
    });
    let mut value = ComplexSum::new();
    let mut error = truncation_error;
    let mut evaluations = 0;
    for p in results {
        let p = p?;
        value.add(p.value);
        error += p.error;
        evaluations += p.evaluations;
    }
    Ok(OracleResult {
        value: value.value(),
        error_bound: error,
        kind: OracleKind::Barnes,
        bound: BoundKind::Heuristic,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::direct_sum;
    use std::f64::consts::E;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn rules_integrate_polynomials_exactly() {
        for degree in 0..=22 {
            let f = |t: f64| Ok(c(t.powi(degree)));
            let (k, g) = gk15(&f, -1.0, 1.0).unwrap();
            let exact = if degree % 2 == 0 {
                2.0 / (degree + 1) as f64
            } else {
                0.0
            };
            assert!((k.re - exact).abs() < 1e-15, "K15 degree {degree}");
            if degree <= 13 {
                assert!((g.re - exact).abs() < 1e-15, "G7 degree {degree}");
            }
        }
        let f = |t: f64| Ok(c(t.powi(3) + 2.0));
        let (k, _) = gk15(&f, 1.0, 3.0).unwrap();
        assert!((k.re - 24.0).abs() < 1e-13);
    }

    #[test]
    fn geometric_series_on_line_two() {
        let spec = SeriesSpec::zeta(1.0, c(0.0)).unwrap();
        let r = barnes_integral(&spec, 1.0, 2.0, 1e-10).unwrap();
        assert!((r.value.re - 1.0 / (E - 1.0)).abs() < 1e-8);
        assert!(r.value.im.abs() < 1e-12);
        assert!(r.is_heuristic());
        assert_eq!(r.kind, OracleKind::Barnes);
    }

    #[test]
    fn agrees_with_direct_sum() {
        let spec = SeriesSpec::zeta_zeta_shift(2.0, c(1.0), c(1.0)).unwrap();
        let b = barnes_integral(&spec, 1.0, 1.6, 1e-10).unwrap();
        let d = direct_sum(&spec, 1.0, 1e-14).unwrap();
        assert!((b.value - d.value).norm() < 1e-8);
    }

    #[test]
    fn rejects_low_contour() {
        let spec = SeriesSpec::zeta(1.0, c(0.0)).unwrap();
        assert_eq!(
            barnes_integral(&spec, 1.0, 0.5, 1e-10),
            Err(Error::Precondition {
                c: 0.5,
                required: 1.0
            })
        );
        assert_eq!(default_contour(&spec), 2.0);
        let shifted = SeriesSpec::zeta(1.0, c(3.0)).unwrap();
        assert_eq!(contour_threshold(&shifted), 0.0);
    }

    #[test]
    fn contour_independence() {
        let spec = SeriesSpec::zeta_squared(1.0, c(0.5)).unwrap();
        let r1 = barnes_integral(&spec, 0.7, 1.0, 1e-10).unwrap();
        let r2 = barnes_integral(&spec, 0.7, 2.5, 1e-10).unwrap();
        assert!((r1.value - r2.value).norm() <= r1.error_bound + r2.error_bound + 1e-12);
    }

    #[test]
    fn execution_modes_agree_bitwise() {
        let spec = SeriesSpec::zeta(2.0, c(0.0)).unwrap();
        let seq = barnes_integral_with(&spec, 0.5, 1.5, 1e-10, Execution::Sequential).unwrap();
        let par = barnes_integral_with(&spec, 0.5, 1.5, 1e-10, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}
