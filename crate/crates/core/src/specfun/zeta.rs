//! Riemann ζ: Euler-Maclaurin Taylor expansions, the functional equation for
//! the left half-plane, Stieltjes constants and the Laurent series at 1.

use std::f64::consts::PI;

use super::gamma::{gamma_taylor, sin_pi};
use super::series::{self, ONE, ZERO};
use super::{cache, POLE_TOL};
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::sum::{ComplexSum, NeumaierSum};
use crate::C64;

pub const ZETA_DERIVATIVE_MAX: usize = 6;
pub const ZETA_LAURENT_MAX: i32 = 6;

/// Euler-Maclaurin settings.  The cutoff actually used is
/// `max(cutoff, ⌈|s|⌉ + 10)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EmParams {
    pub cutoff: usize,
    pub corrections: usize,
}

impl Default for EmParams {
    fn default() -> Self {
        Self {
            cutoff: 40,
            corrections: 12,
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |a, k| a * k as f64)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |a, i| a * (n - i) as f64 / (i + 1) as f64)
}

/// Taylor coefficients about `v0` of `h(v) = (N^{-v} - 1)/v`.
fn h_series(v0: C64, ln_n: f64, n: usize) -> Vec<C64> {
    if (v0 * ln_n).norm() <= 4.0 {
        // h(v) = Σ_{j≥1} (-ln N)^j v^{j-1} / j!, re-centred at v0.
        let mut out = vec![ZERO; n];
        let mut c = 1.0;
        for j in 1..=90 {
            c *= -ln_n / j as f64;
            for (k, o) in out.iter_mut().enumerate().take(j) {
                *o += v0.powi((j - 1 - k) as i32) * (c * binomial(j - 1, k));
            }
        }
        out
    } else {
        let mut num = series::scaled_exp((-v0 * ln_n).exp(), C64::new(-ln_n, 0.0), n);
        num[0] -= ONE;
        let inv: Vec<C64> = (0..n)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign / v0.powi(k as i32 + 1)
            })
            .collect();
        series::mul(&num, &inv, n)
    }
}

/// First `n` Taylor coefficients about `s0` of `ζ(s) - 1/(s-1)`.
pub(crate) fn regular_taylor(s0: C64, n: usize, bern: &[f64], params: EmParams) -> Vec<C64> {
    let cutoff = params.cutoff.max(s0.norm().ceil() as usize + 10);
    let nf = cutoff as f64;
    let ln_n = nf.ln();

    let mut sums = vec![ComplexSum::new(); n];
    for m in (1..cutoff).rev() {
        let lm = (m as f64).ln();
        let mut t = (-s0 * lm).exp();
        for (k, acc) in sums.iter_mut().enumerate() {
            acc.add(t);
            t = t * (-lm) / (k + 1) as f64;
        }
    }
    let mut out: Vec<C64> = sums.iter().map(ComplexSum::value).collect();

    for (o, h) in out.iter_mut().zip(h_series(s0 - ONE, ln_n, n)) {
        *o += h;
    }

    // N^{-s} (1/2 + Σ_k B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{1-2k})
    let mut poly = vec![ZERO; n];
    if n > 0 {
        poly[0] = C64::new(0.5, 0.0);
    }
    let mut q = vec![s0, ONE];
    q.truncate(n);
    for k in 1..=params.corrections {
        let c = bern[2 * k] / factorial(2 * k) * nf.powi(1 - 2 * k as i32);
        for (p, &qi) in poly.iter_mut().zip(&q) {
            *p += qi * c;
        }
        let a = s0 + (2 * k - 1) as f64;
        let b = s0 + (2 * k) as f64;
        q = series::mul(&series::mul(&q, &[a, ONE], n), &[b, ONE], n);
    }
    let expser = series::scaled_exp((-s0 * ln_n).exp(), C64::new(-ln_n, 0.0), n);
    for (o, t) in out.iter_mut().zip(series::mul(&poly, &expser, n)) {
        *o += t;
    }
    out
}

fn em_taylor(s0: C64, n: usize, bern: &[f64], params: EmParams) -> Vec<C64> {
    let v0 = s0 - ONE;
    regular_taylor(s0, n, bern, params)
        .into_iter()
        .enumerate()
        .map(|(k, r)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            r + sign / v0.powi(k as i32 + 1)
        })
        .collect()
}

/// First `n` Taylor coefficients of ζ about `s0 ≠ 1`.
///
/// Euler-Maclaurin for `Re(s0) ≥ 1/2` or `|s0| ≤ 1/2`; otherwise the
/// functional equation `2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)` composed as
/// series, so derivatives stay accurate at the trivial zeros.
pub(crate) fn zeta_taylor_with(s0: C64, n: usize, params: EmParams) -> Result<Vec<C64>> {
    if (s0 - ONE).norm() < POLE_TOL {
        return Err(Error::Pole {
            function: "zeta",
            at: 1,
        });
    }
    let bern = cache::bernoulli_f64();
    if s0.re >= 0.5 || s0.norm() <= 0.5 {
        return Ok(em_taylor(s0, n, bern, params));
    }
    let w0 = ONE - s0;
    let ln2pi = (2.0 * PI).ln();
    let e0 = (s0 * 2f64.ln() + (s0 - ONE) * PI.ln()).exp();
    let e = series::scaled_exp(e0, C64::new(ln2pi, 0.0), n);
    let mut scale = 1.0;
    let s: Vec<C64> = (0..n)
        .map(|k| {
            if k > 0 {
                scale *= PI / 2.0 / k as f64;
            }
            sin_pi((s0 + k as f64) / 2.0) * scale
        })
        .collect();
    let g = series::reflect(&gamma_taylor(w0, n)?);
    let z = series::reflect(&em_taylor(w0, n, bern, params));
    let es = series::mul(&e, &s, n);
    let gz = series::mul(&g, &z, n);
    Ok(series::mul(&es, &gz, n))
}

pub(crate) fn zeta_taylor(s0: C64, n: usize) -> Result<Vec<C64>> {
    zeta_taylor_with(s0, n, cache::global().zeta_em)
}

/// ζ(s).
pub fn zeta(s: C64) -> Result<C64> {
    Ok(zeta_taylor(s, 1)?[0])
}

/// ζ(s) with explicit Euler-Maclaurin settings.
pub fn zeta_with(s: C64, params: EmParams) -> Result<C64> {
    Ok(zeta_taylor_with(s, 1, params)?[0])
}

/// ζ^{(m)}(s), `m ≤ 6`.
pub fn zeta_derivative(s: C64, m: usize) -> Result<C64> {
    if m > ZETA_DERIVATIVE_MAX {
        return Err(Error::Capacity {
            what: "zeta derivative order",
            requested: m,
            max: ZETA_DERIVATIVE_MAX,
        });
    }
    Ok(zeta_taylor(s, m + 1)?[m] * factorial(m))
}

/// `γ_n` from `lim_m Σ_{k<m} (log k)^n/k - (log m)^{n+1}/(n+1)`, with the
/// tail `k ≥ m` replaced by its Euler-Maclaurin expansion.
pub(crate) fn stieltjes_limit(n: usize, m: usize, bern: &[f64]) -> f64 {
    let mut acc = NeumaierSum::new();
    for k in (1..m).rev() {
        let lk = (k as f64).ln();
        acc.add(lk.powi(n as i32) / k as f64);
    }
    let mf = m as f64;
    let lm = mf.ln();
    acc.add(-lm.powi(n as i32 + 1) / (n + 1) as f64);
    acc.add(lm.powi(n as i32) / mf / 2.0);
    // f^{(r)}(t) = t^{-1-r} P_r(log t), P_0 = u^n, P_{r+1} = -(1+r)P_r + P_r'.
    let mut p = vec![0.0; n + 1];
    p[n] = 1.0;
    let eval = |p: &[f64]| p.iter().rev().fold(0.0, |a, &c| a * lm + c);
    for r in 0..(2 * 12usize) {
        if r % 2 == 1 {
            let j = r.div_ceil(2);
            let deriv = eval(&p) * mf.powi(-1 - r as i32);
            acc.add(-bern[2 * j] / factorial(2 * j) * deriv);
        }
        let mut next: Vec<f64> = p.iter().map(|&c| -((1 + r) as f64) * c).collect();
        for i in 1..=n {
            next[i - 1] += i as f64 * p[i];
        }
        p = next;
    }
    acc.value()
}

/// Stieltjes constant `γ_n`, `n ≤ 6`.
pub fn stieltjes(n: usize) -> Result<f64> {
    cache::global().stieltjes.get(n).copied().ok_or(Error::Capacity {
        what: "stieltjes index",
        requested: n,
        max: cache::STIELTJES_COUNT - 1,
    })
}

/// Laurent series of ζ about `s0` through `ε^order` (`order ≤ 6`).
pub fn zeta_laurent(s0: C64, order: i32) -> Result<LaurentSeries> {
    if order > ZETA_LAURENT_MAX {
        return Err(Error::Capacity {
            what: "zeta_laurent order",
            requested: order.max(0) as usize,
            max: ZETA_LAURENT_MAX as usize,
        });
    }
    if (s0 - ONE).norm() < POLE_TOL {
        let mut coeffs = vec![ONE];
        for k in 0..=order.max(-1) {
            let k = k as usize;
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            coeffs.push(C64::new(sign * stieltjes(k)? / factorial(k), 0.0));
        }
        return Ok(LaurentSeries::from_complex(s0, -1, &coeffs));
    }
    let len = (order + 1).max(0) as usize;
    Ok(LaurentSeries::from_complex(s0, 0, &zeta_taylor(s0, len)?))
}
