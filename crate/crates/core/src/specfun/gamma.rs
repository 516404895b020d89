//! Γ, ψ and polygamma functions, plus local expansions of Γ.

use std::f64::consts::PI;

use super::series::{self, ONE, ZERO};
use super::{cache, POLE_TOL};
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::C64;

/// Largest polygamma order accepted by [`polygamma`].
pub const POLYGAMMA_MAX: usize = 6;
/// Largest order accepted by [`gamma_laurent`].
pub const GAMMA_LAURENT_MAX: i32 = 8;

// Lanczos approximation, g = 607/128, n = 15.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126_4e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_274e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162_4e-6,
];

/// Distance threshold of `asymptotic` shifts for ψ and polygamma.
const ASYMPTOTIC_RE: f64 = 20.0;

/// `sin(πx)` with exact zeros at the integers.
pub(crate) fn sin_pi_real(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// `cos(πx)` with exact zeros at the half-integers.
pub(crate) fn cos_pi_real(x: f64) -> f64 {
    let r = (x - 2.0 * (x / 2.0).round()).abs();
    if r == 0.5 {
        return 0.0;
    }
    (PI * (0.5 - r)).sin()
}

pub(crate) fn sin_pi(z: C64) -> C64 {
    let (sh, ch) = ((PI * z.im).sinh(), (PI * z.im).cosh());
    C64::new(sin_pi_real(z.re) * ch, cos_pi_real(z.re) * sh)
}

/// The non-positive integer within `POLE_TOL` of `s`, if any.
pub(crate) fn nonpositive_integer_near(s: C64) -> Option<i64> {
    let n = s.re.round();
    if n <= 0.0 && (s - C64::new(n, 0.0)).norm() < POLE_TOL {
        Some(n as i64)
    } else {
        None
    }
}

fn lanczos(z: C64) -> C64 {
    let z = z - ONE;
    let mut x = C64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log_scale = (z + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_scale.exp() * x
}

/// Γ(s).  Lanczos approximation, reflected for `Re(s) < 1/2`.
pub fn gamma(s: C64) -> Result<C64> {
    if let Some(n) = nonpositive_integer_near(s) {
        return Err(Error::Pole {
            function: "gamma",
            at: n,
        });
    }
    if s.re < 0.5 {
        Ok(PI / (sin_pi(s) * lanczos(ONE - s)))
    } else {
        Ok(lanczos(s))
    }
}

/// ψ(s) = Γ'(s)/Γ(s).
pub fn digamma(s: C64) -> Result<C64> {
    if let Some(n) = nonpositive_integer_near(s) {
        return Err(Error::Pole {
            function: "digamma",
            at: n,
        });
    }
    Ok(polygamma_unchecked(0, s))
}

/// ψ^{(m)}(s), `m ≤ 6`.
pub fn polygamma(m: usize, s: C64) -> Result<C64> {
    if m > POLYGAMMA_MAX {
        return Err(Error::Capacity {
            what: "polygamma order",
            requested: m,
            max: POLYGAMMA_MAX,
        });
    }
    if let Some(n) = nonpositive_integer_near(s) {
        return Err(Error::Pole {
            function: "polygamma",
            at: n,
        });
    }
    Ok(polygamma_unchecked(m, s))
}

/// Recurrence shift to `Re ≥ 20 + m`, then the asymptotic series.
pub(crate) fn polygamma_unchecked(m: usize, s: C64) -> C64 {
    let bern = cache::bernoulli_f64();
    let mut w = s;
    let mut shift = ZERO;
    let threshold = ASYMPTOTIC_RE + m as f64;
    let mut shifted = Vec::new();
    while w.re < threshold {
        shifted.push(w);
        w += 1.0;
    }
    // Add smallest terms first.
    for &z in shifted.iter().rev() {
        shift += z.powi(-(m as i32) - 1);
    }
    if m == 0 {
        let mut asym = w.ln() - 0.5 / w;
        let w2 = w * w;
        let mut wpow = w2;
        for k in 1..=12 {
            asym -= bern[2 * k] / (2 * k) as f64 / wpow;
            wpow *= w2;
        }
        return asym - shift;
    }
    let fact = |n: usize| (1..=n).fold(1.0, |a, k| a * k as f64);
    let mut asym = fact(m - 1) / w.powi(m as i32) + fact(m) / (2.0 * w.powi(m as i32 + 1));
    // B_{2k} (2k+m-1)! / (2k)! / w^{2k+m}
    for k in 1..=12 {
        let ratio = ((2 * k + 1)..=(2 * k + m - 1)).fold(1.0, |a, j| a * j as f64);
        asym += bern[2 * k] * ratio / w.powi((2 * k + m) as i32);
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    (asym + shift * fact(m)) * sign
}

/// Taylor coefficients of Γ at a regular point:
/// `Γ(z₀) exp(Σ_{k≥1} ψ^{(k-1)}(z₀) ε^k / k!)`.
pub(crate) fn gamma_taylor(z0: C64, n: usize) -> Result<Vec<C64>> {
    let g0 = gamma(z0)?;
    let mut log_series = vec![ZERO; n];
    let mut fact = 1.0;
    for (k, c) in log_series.iter_mut().enumerate().skip(1) {
        fact *= k as f64;
        *c = polygamma_unchecked(k - 1, z0) / fact;
    }
    Ok(series::exp(&log_series, n).into_iter().map(|c| c * g0).collect())
}

/// Taylor coefficients of `Γ(1+ε)` from the exact series
/// `log Γ(1+ε) = -γε + Σ_{k≥2} (-1)^k ζ(k) ε^k / k`.
fn gamma_one_plus(n: usize) -> Result<Vec<C64>> {
    let mut log_series = vec![ZERO; n];
    if n > 1 {
        log_series[1] = C64::new(-cache::global().stieltjes[0], 0.0);
    }
    for (k, c) in log_series.iter_mut().enumerate().skip(2) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        *c = super::zeta::zeta(C64::new(k as f64, 0.0))? * (sign / k as f64);
    }
    Ok(series::exp(&log_series, n))
}

/// Laurent series of Γ about `s0` through `ε^order` (`order ≤ 8`).
///
/// At `s0 = -n` this is `Γ(1+ε) / (ε Π_{i=1}^{n} (ε - i))`, built from the
/// log-Γ series and exact series division, so it shares no code with the
/// Lanczos point values.  Elsewhere it is the ψ-based Taylor series.
pub fn gamma_laurent(s0: C64, order: i32) -> Result<LaurentSeries> {
    if order > GAMMA_LAURENT_MAX {
        return Err(Error::Capacity {
            what: "gamma_laurent order",
            requested: order.max(0) as usize,
            max: GAMMA_LAURENT_MAX as usize,
        });
    }
    let len = (order + 1).max(0) as usize;
    match nonpositive_integer_near(s0) {
        None => {
            let coeffs = gamma_taylor(s0, len)?;
            Ok(LaurentSeries::from_complex(s0, 0, &coeffs))
        }
        Some(n) => {
            let base = C64::new(n as f64, 0.0);
            let n = (-n) as usize;
            let numer = LaurentSeries::from_complex(base, 0, &gamma_one_plus(len + 1)?);
            // Π_{i=1}^{n} (ε - i) as an exact polynomial.
            let mut poly = vec![ONE];
            for i in 1..=n {
                poly = series::mul(&poly, &[C64::new(-(i as f64), 0.0), ONE], poly.len() + 1);
            }
            let denom = LaurentSeries::polynomial(base, &poly, order + 1);
            let quotient = numer.mul(&denom.invert(order + 1)?)?;
            Ok(quotient.shift(-1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER: f64 = 0.577_215_664_901_532_9;

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    /// Independent reference: Stirling series for log Γ after shifting to
    /// Re ≥ 30, undone with a product.
    fn stirling_gamma(s: C64) -> C64 {
        let mut z = s;
        let mut prod = ONE;
        while z.re < 30.0 {
            prod *= z;
            z += 1.0;
        }
        let b = [
            1.0 / 6.0,
            -1.0 / 30.0,
            1.0 / 42.0,
            -1.0 / 30.0,
            5.0 / 66.0,
            -691.0 / 2730.0,
            7.0 / 6.0,
        ];
        let mut lg = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln();
        for (k, bk) in b.iter().enumerate() {
            let k2 = 2 * (k + 1);
            lg += bk / ((k2 * (k2 - 1)) as f64 * z.powi(k2 as i32 - 1));
        }
        lg.exp() / prod
    }

    #[test]
    fn spot_values() {
        assert!(rel(gamma(ONE).unwrap(), ONE) < 1e-14);
        assert!(rel(gamma(C64::new(0.5, 0.0)).unwrap(), C64::new(PI.sqrt(), 0.0)) < 1e-14);
        assert!(rel(gamma(C64::new(5.0, 0.0)).unwrap(), C64::new(24.0, 0.0)) < 1e-14);
    }

    #[test]
    fn frozen_reference_values() {
        // mpmath at 30 digits
        let cases = [
            (
                C64::new(3.7, 2.0),
                C64::new(-1.7869005555024373, 1.4814522429760897),
            ),
            (
                C64::new(-2.5, 0.5),
                C64::new(-0.33387520352243233, -0.20645730796360842),
            ),
            (C64::new(0.1, 0.0), C64::new(9.51350769866873, 0.0)),
            (C64::new(45.5, 0.0), C64::new(1.7782763615206234e55, 0.0)),
            (
                C64::new(10.0, 30.0),
                C64::new(-8.542931506169931e-07, -6.5860025841092e-07),
            ),
            (
                C64::new(-20.3, 1.0),
                C64::new(3.996753100554306e-20, 2.2904311639316494e-20),
            ),
        ];
        for (s, expected) in cases {
            let got = gamma(s).unwrap();
            assert!(rel(got, expected) < 1e-13, "Γ({s}) = {got}, expected {expected}");
        }
    }

    #[test]
    fn agrees_with_stirling_reference() {
        for re in [-12.3, -3.5, 0.2, 1.7, 8.1, 25.0, 49.0] {
            for im in [-20.0, -1.0, 0.0, 0.5, 7.0, 30.0] {
                let s = C64::new(re, im);
                if s.norm() > 50.0 {
                    continue;
                }
                assert!(rel(gamma(s).unwrap(), stirling_gamma(s)) < 1e-13, "s = {s}");
            }
        }
    }

    #[test]
    fn poles_report_the_integer() {
        assert_eq!(
            gamma(C64::new(-3.0, 0.0)),
            Err(Error::Pole {
                function: "gamma",
                at: -3
            })
        );
        assert!(matches!(
            gamma(C64::new(1e-13, 0.0)),
            Err(Error::Pole { at: 0, .. })
        ));
        assert!(gamma(C64::new(-2.0, 1e-6)).is_ok());
    }

    #[test]
    fn digamma_and_polygamma() {
        assert!((digamma(ONE).unwrap().re + EULER).abs() < 1e-14);
        assert!((digamma(C64::new(2.0, 0.0)).unwrap().re - (1.0 - EULER)).abs() < 1e-14);
        assert!((polygamma(1, ONE).unwrap().re - PI * PI / 6.0).abs() < 1e-13);
        let cases = [
            (
                0,
                C64::new(0.3, 2.0),
                C64::new(0.687523593749104, 1.6727302110566287),
            ),
            (0, C64::new(-3.7, 0.0), C64::new(-0.8450768588704194, 0.0)),
            (
                3,
                C64::new(2.0, 1.0),
                C64::new(-0.02287444895349598, -0.31728657866196064),
            ),
            (6, C64::new(0.5, 0.0), C64::new(-92203.45792380303, 0.0)),
            (
                2,
                C64::new(-10.2, 5.0),
                C64::new(-0.004601489885192379, -0.0054865568264020675),
            ),
            (
                1,
                C64::new(30.0, -40.0),
                C64::new(0.011942752008119428, 0.016192469439699073),
            ),
        ];
        for (m, s, expected) in cases {
            let got = polygamma(m, s).unwrap();
            let scale = expected.norm().max(1.0);
            assert!((got - expected).norm() / scale < 1e-12, "ψ^({m})({s}) = {got}");
        }
        assert!(matches!(polygamma(7, ONE), Err(Error::Capacity { .. })));
        assert!(matches!(
            digamma(C64::new(-4.0, 0.0)),
            Err(Error::Pole { at: -4, .. })
        ));
    }

    #[test]
    fn trig_helpers_have_exact_zeros() {
        for k in -20..=20 {
            assert_eq!(sin_pi_real(k as f64), 0.0);
            assert_eq!(cos_pi_real(k as f64 + 0.5), 0.0);
        }
        assert!((sin_pi_real(0.25) - (PI / 4.0).sin()).abs() < 1e-16);
        let z = C64::new(0.3, 0.7);
        assert!((sin_pi(z) - (z * PI).sin()).norm() < 1e-14);
    }

    #[test]
    fn laurent_examples() {
        let g0 = gamma_laurent(C64::new(0.0, 0.0), 1).unwrap();
        assert_eq!(g0.valuation(), -1);
        assert!((g0.coeff(-1).unwrap().coeff(0) - ONE).norm() < 1e-15);
        assert!((g0.coeff(0).unwrap().coeff(0).re + EULER).abs() < 1e-14);

        let g1 = gamma_laurent(ONE, 1).unwrap();
        assert!((g1.coeff(0).unwrap().coeff(0) - ONE).norm() < 1e-14);
        assert!((g1.coeff(1).unwrap().coeff(0).re + EULER).abs() < 1e-13);

        let gm1 = gamma_laurent(C64::new(-1.0, 0.0), 0).unwrap();
        assert_eq!(gm1.order(), 0);
        assert!((gm1.residue().unwrap().coeff(0).re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn residue_at_minus_one_matches_contour_integral() {
        // (1/2πi)∮ Γ(s) ds on |s+1| = 0.3, trapezoidal rule (spectrally
        // accurate for periodic integrands).
        let n = 256;
        let r = 0.3;
        let mut acc = ZERO;
        for k in 0..n {
            let theta = 2.0 * PI * k as f64 / n as f64;
            let e = C64::from_polar(r, theta);
            acc += gamma(C64::new(-1.0, 0.0) + e).unwrap() * e;
        }
        let integral = acc / n as f64;
        let laurent = gamma_laurent(C64::new(-1.0, 0.0), 0).unwrap();
        assert!((integral - laurent.residue().unwrap().coeff(0)).norm() < 1e-12);
    }

    #[test]
    fn laurent_matches_point_values_near_poles() {
        // Both routes evaluated at a small offset from the pole.
        for n in 0..5 {
            let base = C64::new(-(n as f64), 0.0);
            let series = gamma_laurent(base, 8).unwrap();
            let eps = C64::new(0.01, 0.005);
            let mut sum = ZERO;
            for k in series.valuation()..=series.order() {
                sum += series.coeff(k).unwrap().coeff(0) * eps.powi(k);
            }
            let direct = gamma(base + eps).unwrap();
            assert!(rel(sum, direct) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn laurent_truncations_are_consistent() {
        for s0 in [
            C64::new(-3.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(2.5, 1.0),
            C64::new(-1.5, 0.0),
        ] {
            let full = gamma_laurent(s0, 8).unwrap();
            for j in 0..8 {
                let short = gamma_laurent(s0, j).unwrap();
                for k in short.valuation()..=short.order() {
                    let a = short.coeff(k).unwrap().coeff(0);
                    let b = full.coeff(k).unwrap().coeff(0);
                    assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0));
                }
            }
        }
        assert!(matches!(gamma_laurent(ONE, 9), Err(Error::Capacity { .. })));
    }

    #[test]
    fn recurrence_on_random_points() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 100 {
            let s = C64::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0));
            if s.norm() > 20.0
                || nonpositive_integer_near(s).is_some()
                || nonpositive_integer_near(s + 1.0).is_some()
            {
                continue;
            }
            let lhs = gamma(s + 1.0).unwrap();
            let rhs = s * gamma(s).unwrap();
            assert!(rel(rhs, lhs) <= 1e-12, "s = {s}");
            checked += 1;
        }
    }
}
