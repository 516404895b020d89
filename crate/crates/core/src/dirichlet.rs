//! Divisor functions and the coefficients `f(n)` of products of shifted zeta
//! functions, `Π_j ζ(a_j s + b_j) = Σ f(n) n^{-s}`, with tail bounds for the
//! q-series `Σ f(n) n^{-b} exp(-n^a x)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::specfun::gamma;
use crate::C64;

/// One factor `ζ(a s + b)` of the Dirichlet series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaFactor {
    pub a: u32,
    pub b: C64,
}

impl ZetaFactor {
    pub fn new(a: u32, b: C64) -> Self {
        Self { a, b }
    }
}

/// `Π_j ζ(a_j s + b_j)` together with the q-series scale `(a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSpec {
    factors: Vec<ZetaFactor>,
    a: f64,
    b: C64,
}

impl SeriesSpec {
    pub fn new(factors: Vec<ZetaFactor>, a: f64, b: C64) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Domain("at least one zeta factor is required".into()));
        }
        if let Some(f) = factors.iter().find(|f| f.a == 0) {
            return Err(Error::Domain(format!(
                "factor ζ({}s + {}) needs a_j ≥ 1",
                f.a, f.b
            )));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("scale a = {a} must be positive")));
        }
        if !(b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::Domain(format!("scale b = {b} must be finite")));
        }
        Ok(Self { factors, a, b })
    }

    /// `ζ(s)`.
    pub fn zeta(a: f64, b: C64) -> Result<Self> {
        Self::new(vec![ZetaFactor::new(1, C64::new(0.0, 0.0))], a, b)
    }

    /// `ζ(s)²`, coefficients `d(n)`.
    pub fn zeta_squared(a: f64, b: C64) -> Result<Self> {
        let f = ZetaFactor::new(1, C64::new(0.0, 0.0));
        Self::new(vec![f, f], a, b)
    }

    /// `ζ(s)ζ(s-α)`, coefficients `σ_α(n)`.
    pub fn zeta_zeta_shift(a: f64, b: C64, alpha: C64) -> Result<Self> {
        Self::new(
            vec![ZetaFactor::new(1, C64::new(0.0, 0.0)), ZetaFactor::new(1, -alpha)],
            a,
            b,
        )
    }

    pub fn factors(&self) -> &[ZetaFactor] {
        &self.factors
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    /// Abscissa of absolute convergence of `Σ f(n) n^{-s}`:
    /// `max_j (1 - Re b_j)/a_j`.
    pub fn abscissa(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| (1.0 - f.b.re) / f.a as f64)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Every Mellin-Barnes contour `Re(s) = c` must satisfy
    /// `c > max_j (1 - Re(b_j + b))/(a a_j)`.
    pub fn mellin_abscissa(&self) -> f64 {
        self.factors
            .iter()
            .map(|f| (1.0 - (f.b + self.b).re) / (self.a * f.a as f64))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The same product with a different scale `(a, b)`.
    pub fn with_scale(&self, a: f64, b: C64) -> Result<Self> {
        Self::new(self.factors.clone(), a, b)
    }

    /// Growth exponent δ with `|f(n)| ≤ C n^δ`.
    ///
    /// Factor `j` contributes `|m^{-b_j}| = n^{-Re b_j / a_j}` at `n = m^{a_j}`;
    /// with more than one factor the divisor-type multiplicity is covered by an
    /// extra `n^{1/2}`.
    pub fn growth_exponent(&self) -> f64 {
        let shift = self
            .factors
            .iter()
            .map(|f| (-f.b.re).max(0.0) / f.a as f64)
            .fold(0.0, f64::max);
        if self.k() == 1 {
            shift
        } else {
            shift + 0.5
        }
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for z in &self.factors {
            let a = if z.a == 1 { String::new() } else { z.a.to_string() };
            if z.b == C64::new(0.0, 0.0) {
                write!(f, "ζ({a}s)")?;
            } else if z.b.im == 0.0 {
                let sign = if z.b.re < 0.0 { '-' } else { '+' };
                write!(f, "ζ({a}s{sign}{})", z.b.re.abs())?;
            } else {
                write!(f, "ζ({a}s+({}))", z.b)?;
            }
        }
        write!(f, ", a={}, b={}", self.a, fmt_complex(self.b))
    }
}

fn fmt_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{z}")
    }
}

/// `|f(n)| ≤ c · n^delta`, with `c` calibrated on a computed prefix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthHint {
    pub delta: f64,
    pub c: f64,
}

/// `f(1..=N)` for a [`SeriesSpec`].
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCoefficients {
    // values[0] is unused so that values[n] = f(n)
    values: Vec<C64>,
    growth: GrowthHint,
}

impl DirichletCoefficients {
    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `f(n)` for `1 ≤ n ≤ N`.
    pub fn get(&self, n: usize) -> Option<C64> {
        if n == 0 {
            None
        } else {
            self.values.get(n).copied()
        }
    }

    /// `f(1), …, f(N)`.
    pub fn values(&self) -> &[C64] {
        &self.values[1..]
    }

    pub fn growth(&self) -> GrowthHint {
        self.growth
    }

    /// [`tail_bound_with`] using this prefix's growth calibration.
    pub fn tail_bound(&self, spec: &SeriesSpec, x: f64, n: usize) -> f64 {
        tail_bound_with(self.growth, spec, x, n)
    }
}

/// Coefficients by iterated Dirichlet convolution: factor `j` contributes
/// `m^{-b_j}` at index `m^{a_j}`.
pub fn coeffs_product(spec: &SeriesSpec, n: usize) -> Result<DirichletCoefficients> {
    if n == 0 {
        return Err(Error::Domain("coefficient count N must be at least 1".into()));
    }
    let mut f = vec![C64::new(0.0, 0.0); n + 1];
    f[1] = C64::new(1.0, 0.0);
    for factor in spec.factors() {
        let mut h = vec![C64::new(0.0, 0.0); n + 1];
        let mut m = 1usize;
        while let Some(idx) = checked_pow(m, factor.a).filter(|&i| i <= n) {
            let w = (-factor.b * (m as f64).ln()).exp();
            for d in 1..=n / idx {
                if f[d] != C64::new(0.0, 0.0) {
                    h[d * idx] += f[d] * w;
                }
            }
            m += 1;
        }
        f = h;
    }
    let delta = spec.growth_exponent();
    let c = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| v.norm() / (k as f64).powf(delta))
        .fold(1.0, f64::max);
    Ok(DirichletCoefficients {
        values: f,
        growth: GrowthHint { delta, c },
    })
}

fn checked_pow(m: usize, a: u32) -> Option<usize> {
    m.checked_pow(a)
}

/// Prefix length used to calibrate [`tail_bound`].
pub const CALIBRATION_PREFIX: usize = 1024;

/// Heuristic bound on `|Σ_{n>N} f(n) n^{-b} exp(-n^a x)|`, with the growth
/// constant calibrated on `f(1..=1024)`.
pub fn tail_bound(spec: &SeriesSpec, x: f64, n: usize) -> Result<f64> {
    let coeffs = coeffs_product(spec, CALIBRATION_PREFIX)?;
    Ok(coeffs.tail_bound(spec, x, n))
}

/// `C · Σ_{n>N} n^p exp(-n^a x)`, `p = δ - Re b`, bounded by the smaller of
///
/// * `e^{-N^a x/2} Σ_{n>N} n^p e^{-n^a x/2}`, the latter sum bounded by its
///   largest term plus the full integral (valid for `p > -1`), and
/// * `∫_N^∞ t^p e^{-t^a x} dt = Γ(σ, X)/(a x^σ)`, `σ = (p+1)/a`, `X = N^a x`,
///   valid once the summand decreases past `N` (`X ≥ p/a`), with
///   `Γ(σ, X) ≤ X^{σ-1} e^{-X} / (1 - max(σ-1, 0)/X)`.
///
/// Both are non-increasing in `N`, so the minimum is too.
pub fn tail_bound_with(growth: GrowthHint, spec: &SeriesSpec, x: f64, n: usize) -> f64 {
    let a = spec.a();
    let p = growth.delta - spec.b().re;
    let sigma = (p + 1.0) / a;
    let nf = n as f64;
    let big_x = nf.powf(a) * x;

    let mut best = f64::INFINITY;
    if p > -1.0 {
        let y = x / 2.0;
        let integral =
            gamma(C64::new(sigma, 0.0)).map(|g| g.re).unwrap_or(f64::INFINITY) / (a * y.powf(sigma));
        let peak = if p > 0.0 {
            let t = (p / (a * y)).powf(1.0 / a);
            t.powf(p) * (-t.powf(a) * y).exp()
        } else {
            (nf + 1.0).powf(p) * (-(nf + 1.0).powf(a) * y).exp()
        };
        best = best.min((-big_x / 2.0).exp() * (peak + integral));
    }
    let excess = (sigma - 1.0).max(0.0);
    if n >= 1 && big_x >= p / a && big_x > excess {
        let incomplete = big_x.powf(sigma - 1.0) * (-big_x).exp() / (1.0 - excess / big_x);
        best = best.min(incomplete / (a * x.powf(sigma)));
    }
    growth.c * best
}

/// `σ_α(n) = Σ_{d|n} d^α`, from the factorisation of `n`.
pub fn sigma_alpha(n: u64, alpha: C64) -> Result<C64> {
    if n == 0 {
        return Err(Error::Domain("σ_α(n) needs n ≥ 1".into()));
    }
    // Small integer exponents use exact powers, so σ_k(n) is exact while it
    // fits in 53 bits.
    let integer =
        (alpha.im == 0.0 && alpha.re.fract() == 0.0 && alpha.re.abs() <= 64.0).then_some(alpha.re as i32);
    let mut result = C64::new(1.0, 0.0);
    for (p, k) in factorize(n) {
        let pa = match integer {
            Some(e) => C64::new((p as f64).powi(e), 0.0),
            None => (alpha * (p as f64).ln()).exp(),
        };
        let mut term = C64::new(1.0, 0.0);
        let mut acc = C64::new(1.0, 0.0);
        for _ in 0..k {
            term *= pa;
            acc += term;
        }
        result *= acc;
    }
    Ok(result)
}

/// Number of divisors `d(n)`.
pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, k)| u64::from(k) + 1).product()
}

/// Prime factorisation by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::zeta;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_alpha(6, c(1.0, 0.0)).unwrap(), c(12.0, 0.0));
        assert_eq!(sigma_alpha(12, c(0.0, 0.0)).unwrap(), c(6.0, 0.0));
        assert!(rel(sigma_alpha(4, c(-2.0, 0.0)).unwrap(), c(21.0 / 16.0, 0.0)) < 1e-15);
        assert_eq!(sigma_alpha(1, c(3.7, -2.0)).unwrap(), c(1.0, 0.0));
        assert!(matches!(sigma_alpha(0, c(1.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn sigma_matches_naive_divisor_loop() {
        for n in 1..=10_000u64 {
            let naive: u64 = (1..=n).filter(|d| n % d == 0).sum();
            assert_eq!(
                sigma_alpha(n, c(1.0, 0.0)).unwrap(),
                c(naive as f64, 0.0),
                "n = {n}"
            );
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn sigma_is_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 100 {
            let m = rng.random_range(1..=1000u64);
            let n = rng.random_range(1..=1000u64);
            if gcd(m, n) != 1 {
                continue;
            }
            let alpha = c(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let lhs = sigma_alpha(m * n, alpha).unwrap();
            let rhs = sigma_alpha(m, alpha).unwrap() * sigma_alpha(n, alpha).unwrap();
            assert!(rel(lhs, rhs) <= 1e-12);
            checked += 1;
        }
    }

    #[test]
    fn product_examples() {
        let d = coeffs_product(&SeriesSpec::zeta_squared(1.0, c(0.0, 0.0)).unwrap(), 20).unwrap();
        for n in 1..=20 {
            assert_eq!(d.get(n).unwrap(), c(divisor_count(n as u64) as f64, 0.0));
        }
        let z2 = SeriesSpec::new(vec![ZetaFactor::new(2, c(0.0, 0.0))], 1.0, c(0.0, 0.0)).unwrap();
        let v = coeffs_product(&z2, 10).unwrap();
        for n in 1..=10 {
            let expected = if [1, 4, 9].contains(&n) { 1.0 } else { 0.0 };
            assert_eq!(v.get(n).unwrap(), c(expected, 0.0));
        }
        assert_eq!(v.get(0), None);
        assert_eq!(v.get(11), None);
        assert_eq!(v.values()[0], c(1.0, 0.0));
    }

    #[test]
    fn sigma_product_matches_pointwise() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let alpha = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let spec = SeriesSpec::zeta_zeta_shift(1.0, c(0.0, 0.0), alpha).unwrap();
            let f = coeffs_product(&spec, 1000).unwrap();
            for n in 1..=1000 {
                let s = sigma_alpha(n as u64, alpha).unwrap();
                assert!(rel(f.get(n).unwrap(), s) <= 1e-12, "n = {n}, α = {alpha}");
            }
        }
    }

    #[test]
    fn partial_sums_approach_zeta_product() {
        let spec = SeriesSpec::zeta_zeta_shift(1.0, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let s = C64::new(spec.abscissa() + 2.0, 0.0);
        let target = zeta(s).unwrap() * zeta(s - 1.0).unwrap();
        let f = coeffs_product(&spec, 10_000).unwrap();
        let mut errors = Vec::new();
        for n_max in [100, 1000, 10_000] {
            let partial: C64 = (1..=n_max)
                .map(|n| f.get(n).unwrap() * (-s * (n as f64).ln()).exp())
                .sum();
            let err = rel(partial, target);
            assert!(err <= 1.0 / n_max as f64, "N = {n_max}: {err}");
            errors.push(err);
        }
        assert!(errors.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn abscissae() {
        let spec = SeriesSpec::zeta_zeta_shift(2.0, c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(spec.abscissa(), 2.0);
        assert_eq!(spec.mellin_abscissa(), 0.5);
        assert!(SeriesSpec::zeta(0.0, c(0.0, 0.0)).is_err());
        assert!(SeriesSpec::new(vec![], 1.0, c(0.0, 0.0)).is_err());
        assert!(SeriesSpec::new(vec![ZetaFactor::new(0, c(0.0, 0.0))], 1.0, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn tail_bound_geometric_case() {
        let spec = SeriesSpec::zeta(1.0, c(0.0, 0.0)).unwrap();
        let coeffs = coeffs_product(&spec, 1024).unwrap();
        let bound = coeffs.tail_bound(&spec, 1.0, 100);
        let closed = coeffs.growth().c * (-100f64).exp() / (1.0 - (-1f64).exp());
        assert!(bound <= closed);
        // and it really bounds Σ_{n>100} e^{-n} = e^{-101}/(1 - e^{-1})
        assert!(bound >= (-101f64).exp() / (1.0 - (-1f64).exp()));
    }

    fn specs() -> Vec<SeriesSpec> {
        vec![
            SeriesSpec::zeta(1.0, c(0.0, 0.0)).unwrap(),
            SeriesSpec::zeta(2.0, c(-1.0, 0.0)).unwrap(),
            SeriesSpec::zeta_squared(1.0, c(0.0, 0.0)).unwrap(),
            SeriesSpec::zeta_squared(2.0, c(1.0, 0.0)).unwrap(),
            SeriesSpec::zeta_zeta_shift(2.0, c(1.0, 0.0), c(1.0, 0.0)).unwrap(),
            SeriesSpec::zeta_zeta_shift(1.0, c(0.0, 0.0), c(1.0, 0.0)).unwrap(),
            SeriesSpec::zeta_zeta_shift(2.0, c(0.5, 0.0), c(-2.0, 0.0)).unwrap(),
            SeriesSpec::zeta(3.0, c(0.5, 0.0)).unwrap(),
        ]
    }

    #[test]
    fn tail_bound_is_tiny_far_out() {
        for spec in specs() {
            for x in [0.5_f64, 1.0, 2.0] {
                let n = (80.0_f64 / x).powf(1.0 / spec.a()).ceil() as usize;
                let bound = tail_bound(&spec, x, n).unwrap();
                assert!(bound < 1e-30, "{spec}, x = {x}: {bound:e}");
            }
        }
    }

    #[test]
    fn tail_bound_is_monotone_and_bounds_the_tail() {
        for spec in specs() {
            let coeffs = coeffs_product(&spec, 5000).unwrap();
            for x in [0.05, 0.3, 1.0] {
                let mut previous = f64::INFINITY;
                for n in 1..400 {
                    let bound = coeffs.tail_bound(&spec, x, n);
                    assert!(bound <= previous, "{spec}, x = {x}, N = {n}");
                    previous = bound;
                    if n % 37 == 0 {
                        let tail: C64 = (n + 1..=5000)
                            .map(|k| {
                                let kf = k as f64;
                                coeffs.get(k).unwrap()
                                    * (-spec.b() * kf.ln()).exp()
                                    * (-kf.powf(spec.a()) * x).exp()
                            })
                            .sum();
                        assert!(tail.norm() <= bound, "{spec}, x = {x}, N = {n}");
                    }
                }
            }
        }
    }
}
