//! Named consistency checks over every module, plus the acceptance grid.
//!
//! Each check returns a one-line detail string; [`run`] collects them into a
//! [`Report`].  Checks that read cached constants take them from the
//! [`Context`], so a deliberately corrupted cache can be passed in to see the
//! failure path.

use std::f64::consts::PI;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dirichlet::{coeffs_product, divisor_count, sigma_alpha, tail_bound, SeriesSpec};
use crate::exec::Execution;
use crate::expansion::{
    corollary2, corollary3, corollary4, enumerate_poles, expand_general, expand_general_with,
    AsymptoticExpansion, DEFAULT_TOL,
};
use crate::laurent::{LaurentSeries, LogPolynomial};
use crate::oracle::{barnes_integral_with, default_contour, direct_sum_with, DEFAULT_TERM_CAP};
use crate::specfun::{
    bernoulli, euler_gamma, gamma, glaisher_log, stieltjes, zeta, zeta_derivative, SpecialValueCache,
};
use crate::C64;

pub type Outcome = std::result::Result<String, String>;

/// What a check may read.
#[derive(Clone, Copy)]
pub struct Context<'a> {
    pub cache: &'a SpecialValueCache,
    pub exec: Execution,
}

#[derive(Clone, Copy)]
pub struct Check {
    pub name: &'static str,
    pub module: &'static str,
    run: fn(&Context) -> Outcome,
}

impl Check {
    /// Runs the check; panics and library errors count as failures.
    pub fn run(&self, ctx: &Context) -> CheckResult {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (self.run)(ctx)))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckResult {
            name: self.name.to_string(),
            passed,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    fn matches(&self, filter: &str) -> bool {
        self.module == filter || self.name.contains(filter)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {:<40} {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} passed, {failed} failed",
            self.results.len(),
            self.results.len() - failed
        )
    }
}

/// Every check, module checks first, then the acceptance criteria.
pub fn registry() -> Vec<Check> {
    macro_rules! check {
        ($module:literal, $name:literal, $f:expr) => {
            Check {
                name: concat!($module, "/", $name),
                module: $module,
                run: $f,
            }
        };
    }
    vec![
        check!("specfun", "bernoulli", check_bernoulli),
        check!("specfun", "zeta-values", |_| check_zeta_values()),
        check!("specfun", "stieltjes", |_| check_stieltjes()),
        check!("specfun", "glaisher", |_| check_glaisher()),
        check!("specfun", "functional-equation", |_| check_functional_equation()),
        check!("specfun", "gamma-recurrence", |_| check_gamma_recurrence()),
        check!("laurent", "ring-laws", |_| check_ring_laws()),
        check!("laurent", "invert", |_| check_invert()),
        check!("laurent", "residue-linearity", |_| check_residue_linearity()),
        check!("dirichlet", "sigma", |_| check_sigma()),
        check!("dirichlet", "divisor-count", |_| check_divisor_count()),
        check!("dirichlet", "tail-monotone", |_| check_tail_monotone()),
        check!("expansion", "engine-corollary", |ctx| check_engine_corollary(
            ctx, 6
        )),
        check!("expansion", "pole-multiplicity", |_| check_pole_multiplicity()),
        check!("expansion", "degree-and-merge", |_| check_degree_and_merge()),
        check!("expansion", "numerical-match", check_numerical_match),
        check!("oracle", "direct-closed-form", check_direct_closed_form),
        check!("oracle", "cross-random", check_cross_random),
        check!("oracle", "contour-independence", check_contour_independence),
        check!("acceptance", "01-geometric-closed-form", |_| acceptance_1()),
        check!("acceptance", "02-theta-flatness", acceptance_2),
        check!("acceptance", "03-log-case", acceptance_3),
        check!("acceptance", "04-sigma-beyond-all-orders", acceptance_4),
        check!("acceptance", "05-engine-corollary-grid", |ctx| {
            check_engine_corollary(ctx, 6)
        }),
        check!("acceptance", "06-example-adjudication", acceptance_6),
        check!("acceptance", "07-cross-oracle", acceptance_7),
        check!("acceptance", "08-special-values", |_| acceptance_8()),
        check!("acceptance", "09-dirichlet-coefficients", |_| acceptance_9()),
        check!("acceptance", "10-property-suites", |_| acceptance_10()),
    ]
}

/// The acceptance criteria alone.
pub fn acceptance() -> Vec<Check> {
    registry()
        .into_iter()
        .filter(|c| c.module == "acceptance")
        .collect()
}

/// Runs every check whose module equals `filter` or whose name contains it.
pub fn run(filter: Option<&str>, ctx: &Context) -> Report {
    let results = registry()
        .iter()
        .filter(|c| filter.is_none_or(|f| c.matches(f)))
        .map(|c| c.run(ctx))
        .collect();
    Report { results }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: crate::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn re(v: f64) -> C64 {
    C64::new(v, 0.0)
}

fn rel_err(got: C64, want: C64) -> f64 {
    (got - want).norm() / want.norm()
}

fn direct(spec: &SeriesSpec, x: f64, ctx: &Context) -> Result<crate::oracle::OracleResult, String> {
    lib(direct_sum_with(spec, x, 1e-15, DEFAULT_TERM_CAP, ctx.exec))
}

// ---------------------------------------------------------------- specfun

fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

/// The recurrence `Σ_{k≤m} C(m+1,k) B_k = 0` and von Staudt-Clausen
/// (`B_{2k} + Σ_{(p-1) | 2k} 1/p` is an integer) on the cached table.
fn check_bernoulli(ctx: &Context) -> Outcome {
    let b = &ctx.cache.bernoulli;
    let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for m in 1..b.len() {
        let mut next = vec![BigInt::one(); m + 2];
        for j in 1..=m {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
        let sum: BigRational = (0..=m)
            .map(|k| BigRational::from_integer(row[k].clone()) * &b[k])
            .sum();
        ensure(sum.is_zero(), || format!("recurrence fails at m = {m}"))?;
    }
    let primes = primes_up_to(b.len());
    for k in (2..b.len()).step_by(2) {
        let frac: BigRational = primes
            .iter()
            .filter(|&&p| k % (p - 1) == 0)
            .map(|&p| BigRational::new(BigInt::one(), BigInt::from(p)))
            .sum();
        ensure((&b[k] + frac).is_integer(), || {
            format!("von Staudt-Clausen fails for B_{k}")
        })?;
    }
    for (k, (exact, float)) in b.iter().zip(&ctx.cache.bernoulli_f64).enumerate() {
        let want = exact.to_f64().unwrap_or(f64::NAN);
        ensure(*float == want, || format!("f64 copy of B_{k} differs"))?;
    }
    Ok(format!("B_0..B_{} consistent", b.len() - 1))
}

fn check_zeta_values() -> Outcome {
    let z2 = rel_err(lib(zeta(re(2.0)))?, re(PI * PI / 6.0));
    ensure(z2 <= 1e-14, || format!("ζ(2) rel err {z2:e}"))?;
    let zm1 = rel_err(lib(zeta(re(-1.0)))?, re(-1.0 / 12.0));
    ensure(zm1 <= 1e-14, || format!("ζ(-1) rel err {zm1:e}"))?;
    let mut worst = 0.0f64;
    for k in 1..=10 {
        worst = worst.max(lib(zeta(re(-2.0 * k as f64)))?.norm());
    }
    ensure(worst <= 1e-13, || format!("max |ζ(-2k)| = {worst:e}"))?;
    Ok(format!(
        "ζ(2) {z2:.1e}, ζ(-1) {zm1:.1e}, max |ζ(-2k)| {worst:.1e}"
    ))
}

fn check_stieltjes() -> Outcome {
    let g1 = lib(stieltjes(1))?;
    let err = (g1 + 0.072_815_8).abs();
    ensure(err <= 1e-6, || format!("γ₁ = {g1}"))?;
    ensure(lib(stieltjes(0))? == euler_gamma(), || "γ₀ ≠ γ".into())?;
    Ok(format!("γ₁ = {g1:.10}"))
}

/// `ζ'(-1) = 1/12 - log A`.
fn check_glaisher() -> Outcome {
    let d = lib(zeta_derivative(re(-1.0), 1))?;
    let err = (d - re(1.0 / 12.0 - glaisher_log())).norm();
    ensure(err <= 1e-10, || format!("ζ'(-1) off by {err:e}"))?;
    Ok(format!("ζ'(-1) = {:.12}, err {err:.1e}", d.re))
}

fn check_functional_equation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let s = C64::new(rng.random_range(-8.0..0.4), rng.random_range(-25.0..25.0));
        let rhs = (s * 2f64.ln() + (s - 1.0) * PI.ln()).exp()
            * (s * PI / 2.0).sin()
            * lib(gamma(re(1.0) - s))?
            * lib(zeta(re(1.0) - s))?;
        worst = worst.max(rel_err(lib(zeta(s))?, rhs));
    }
    ensure(worst <= 1e-10, || format!("worst rel err {worst:e}"))?;
    Ok(format!("50 points, worst rel err {worst:.1e}"))
}

fn check_gamma_recurrence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = C64::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        worst = worst.max(rel_err(lib(gamma(s + 1.0))?, s * lib(gamma(s))?));
    }
    let half = rel_err(lib(gamma(re(0.5)))?, re(PI.sqrt()));
    ensure(worst <= 1e-12 && half <= 1e-14, || {
        format!("recurrence {worst:e}, Γ(1/2) {half:e}")
    })?;
    Ok(format!("100 points, worst rel err {worst:.1e}"))
}

// ---------------------------------------------------------------- laurent

fn random_poly(rng: &mut ChaCha8Rng, max_len: usize) -> LogPolynomial {
    let len = rng.random_range(1..=max_len);
    LogPolynomial::new(
        (0..len)
            .map(|_| C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
            .collect(),
    )
}

fn random_series(rng: &mut ChaCha8Rng) -> LaurentSeries {
    let v = rng.random_range(-3..=2);
    let len = rng.random_range(1..=9);
    let coeffs = (0..len).map(|_| random_poly(rng, 7)).collect();
    LaurentSeries::new(re(0.5), v, coeffs)
}

fn series_distance(a: &LaurentSeries, b: &LaurentSeries) -> f64 {
    let lo = a.valuation().min(b.valuation());
    let hi = a.order().min(b.order());
    (lo..=hi)
        .map(|k| {
            let (p, q) = (a.coeff(k).unwrap_or_default(), b.coeff(k).unwrap_or_default());
            let n = p.coeffs().len().max(q.coeffs().len());
            (0..n)
                .map(|m| (p.coeff(m) - q.coeff(m)).norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn check_ring_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (f, g, h) = (
            random_series(&mut rng),
            random_series(&mut rng),
            random_series(&mut rng),
        );
        let fg = lib(f.mul(&g))?;
        let pairs = [
            (fg.clone(), lib(g.mul(&f))?),
            (lib(fg.mul(&h))?, lib(f.mul(&lib(g.mul(&h))?))?),
            (lib(lib(f.add(&g))?.add(&h))?, lib(f.add(&lib(g.add(&h))?))?),
            (lib(f.mul(&lib(g.add(&h))?))?, lib(fg.add(&lib(f.mul(&h))?))?),
        ];
        for (l, r) in &pairs {
            worst = worst.max(series_distance(l, r));
        }
    }
    ensure(worst <= 1e-12, || format!("worst deviation {worst:e}"))?;
    Ok(format!("200 triples, worst deviation {worst:.1e}"))
}

fn check_invert() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let lead = C64::new(rng.random_range(1.0..2.0), rng.random_range(-1.0..1.0));
        let mut coeffs = vec![LogPolynomial::constant(lead)];
        for _ in 0..rng.random_range(0..=8) {
            coeffs.push(random_poly(&mut rng, 7).scale(re(0.25)));
        }
        let f = LaurentSeries::new(re(0.0), rng.random_range(-3..=3), coeffs);
        let order = f.order() - f.valuation();
        let p = lib(f.mul(&lib(f.invert(order))?))?;
        worst = worst.max(series_distance(&p, &LaurentSeries::one(re(0.0), order)));
    }
    ensure(worst <= 1e-12, || format!("worst deviation {worst:e}"))?;
    Ok(format!("200 series, worst deviation {worst:.1e}"))
}

fn check_residue_linearity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (f, g) = (random_series(&mut rng), random_series(&mut rng));
        let a = C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let b = C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let combo = lib(f.scale(a).add(&g.scale(b)))?;
        if let (Ok(rf), Ok(rg), Ok(rc)) = (f.residue(), g.residue(), combo.residue()) {
            let want = &rf.scale(a) + &rg.scale(b);
            let d = &rc - &want;
            worst = worst.max(d.max_abs());
        }
    }
    ensure(worst <= 1e-12, || format!("worst deviation {worst:e}"))?;
    Ok(format!("200 pairs, worst deviation {worst:.1e}"))
}

// -------------------------------------------------------------- dirichlet

fn check_sigma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let alpha = C64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let spec = lib(SeriesSpec::zeta_zeta_shift(1.0, re(0.0), alpha))?;
        let f = lib(coeffs_product(&spec, 1000))?;
        for n in 1..=1000u64 {
            let want = lib(sigma_alpha(n, alpha))?;
            worst = worst.max(rel_err(f.get(n as usize).unwrap_or_default(), want));
        }
    }
    ensure(worst <= 1e-12, || format!("worst rel err {worst:e}"))?;
    Ok(format!("5 α × 1000 n, worst rel err {worst:.1e}"))
}

fn check_divisor_count() -> Outcome {
    let spec = lib(SeriesSpec::zeta_squared(1.0, re(0.0)))?;
    let f = lib(coeffs_product(&spec, 1000))?;
    for n in 1..=1000u64 {
        let got = f.get(n as usize).unwrap_or_default();
        ensure(got == re(divisor_count(n) as f64), || format!("d({n}) = {got}"))?;
    }
    Ok("d(n) exact for n ≤ 1000".into())
}

fn check_tail_monotone() -> Outcome {
    let specs = [
        lib(SeriesSpec::zeta(1.0, re(0.0)))?,
        lib(SeriesSpec::zeta_squared(2.0, re(1.0)))?,
        lib(SeriesSpec::zeta_zeta_shift(1.0, re(0.0), re(1.0)))?,
    ];
    for spec in &specs {
        for x in [0.05, 0.5, 2.0] {
            let mut last = f64::INFINITY;
            for n in (1..400).step_by(7) {
                let t = lib(tail_bound(spec, x, n))?;
                ensure(t <= last * (1.0 + 1e-12), || format!("{spec}: x = {x}, N = {n}"))?;
                last = t;
            }
        }
    }
    Ok("non-increasing in N on 3 specs × 3 x".into())
}

// -------------------------------------------------------------- expansion

/// A point of the closed-form dispatch grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridPoint {
    Zeta { a: f64, b: f64 },
    ZetaSquared { a: f64, b: f64 },
    Sigma { a: f64, b: f64, alpha: f64 },
}

impl GridPoint {
    pub fn spec(&self) -> crate::Result<SeriesSpec> {
        match *self {
            GridPoint::Zeta { a, b } => SeriesSpec::zeta(a, re(b)),
            GridPoint::ZetaSquared { a, b } => SeriesSpec::zeta_squared(a, re(b)),
            GridPoint::Sigma { a, b, alpha } => SeriesSpec::zeta_zeta_shift(a, re(b), re(alpha)),
        }
    }

    pub fn closed_form(&self, n: usize) -> crate::Result<AsymptoticExpansion> {
        match *self {
            GridPoint::Zeta { a, b } => corollary2(a, re(b), n),
            GridPoint::ZetaSquared { a, b } => corollary3(a, re(b), n),
            GridPoint::Sigma { a, b, alpha } => corollary4(a, re(b), re(alpha), n),
        }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridPoint::Zeta { a, b } => write!(f, "ζ a={a} b={b}"),
            GridPoint::ZetaSquared { a, b } => write!(f, "ζ² a={a} b={b}"),
            GridPoint::Sigma { a, b, alpha } => write!(f, "σ a={a} b={b} α={alpha}"),
        }
    }
}

/// Every case of the three closed forms: 6 + 4 + 5 required points plus one
/// that reaches the second `σ` case.
pub fn dispatch_grid() -> Vec<GridPoint> {
    use GridPoint::*;
    vec![
        Zeta { a: 2.0, b: 0.0 },
        Zeta { a: 2.0, b: 1.0 },
        Zeta { a: 2.0, b: -1.0 },
        Zeta { a: 1.0, b: 0.0 },
        Zeta { a: 1.0, b: 2.0 },
        Zeta { a: 3.0, b: 0.5 },
        ZetaSquared { a: 2.0, b: 2.0 },
        ZetaSquared { a: 1.0, b: 0.0 },
        ZetaSquared { a: 2.0, b: 1.0 },
        ZetaSquared { a: 1.0, b: 2.0 },
        Sigma {
            a: 2.0,
            b: 0.5,
            alpha: 1.0,
        },
        Sigma {
            a: 2.0,
            b: 1.0,
            alpha: 1.0,
        },
        Sigma {
            a: 2.0,
            b: 1.0,
            alpha: -2.0,
        },
        Sigma {
            a: 1.0,
            b: 0.0,
            alpha: 1.0,
        },
        Sigma {
            a: 1.0,
            b: 2.0,
            alpha: 1.0,
        },
        Sigma {
            a: 2.0,
            b: 0.5,
            alpha: -0.5,
        },
    ]
}

/// Largest relative coefficient difference, after checking that both
/// expansions have identical exponents.
pub fn compare_expansions(engine: &AsymptoticExpansion, closed: &AsymptoticExpansion) -> Result<f64, String> {
    let (e, c) = (engine.exponents(), closed.exponents());
    ensure(e == c, || format!("exponents differ: {e:?} vs {c:?}"))?;
    let mut worst = 0.0f64;
    for (s, t) in engine.terms.iter().zip(&closed.terms) {
        let n = s.logpoly.coeffs().len().max(t.logpoly.coeffs().len());
        for m in 0..n {
            let (u, v) = (s.logpoly.coeff(m), t.logpoly.coeff(m));
            let d = (u - v).norm() / (u.norm().max(v.norm()) + 1e-5);
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

fn check_engine_corollary(ctx: &Context, n: usize) -> Outcome {
    let mut worst = 0.0f64;
    let mut labels = Vec::new();
    for p in dispatch_grid() {
        let engine = lib(expand_general_with(&lib(p.spec())?, n, ctx.exec))?;
        let closed = lib(p.closed_form(n))?;
        let d = compare_expansions(&engine, &closed).map_err(|e| format!("{p}: {e}"))?;
        // Coefficients below 1e-15 in both count as agreeing zeros.
        ensure(d <= 1e-10, || {
            format!("{p} ({}): rel diff {d:e}", closed.case_label)
        })?;
        worst = worst.max(d);
        labels.push(closed.case_label);
    }
    labels.sort();
    labels.dedup();
    Ok(format!(
        "{} points, {} cases, worst rel diff {worst:.1e}",
        dispatch_grid().len(),
        labels.len()
    ))
}

fn check_pole_multiplicity() -> Outcome {
    for p in dispatch_grid() {
        let spec = lib(p.spec())?;
        let closed = lib(p.closed_form(4))?;
        let poles = lib(enumerate_poles(&spec, 4, DEFAULT_TOL))?;
        for t in &closed.terms {
            let pole = poles
                .poles
                .iter()
                .find(|q| (q.location + t.x_exponent).norm() == 0.0)
                .ok_or_else(|| format!("{p}: no pole for x^{}", t.x_exponent))?;
            ensure(pole.multiplicity == t.multiplicity, || {
                format!(
                    "{p}: pole {} has order {}, closed form {}",
                    pole.location, pole.multiplicity, t.multiplicity
                )
            })?;
        }
    }
    Ok(format!("{} grid points", dispatch_grid().len()))
}

fn check_degree_and_merge() -> Outcome {
    for p in dispatch_grid() {
        let e = lib(expand_general(&lib(p.spec())?, 5))?;
        for t in &e.terms {
            ensure(t.logpoly.degree().unwrap_or(0) < t.multiplicity, || {
                format!("{p}: {t}")
            })?;
        }
        for w in e.terms.windows(2) {
            ensure((w[0].x_exponent - w[1].x_exponent).norm() > DEFAULT_TOL, || {
                format!("{p}: duplicate exponent {}", w[0].x_exponent)
            })?;
        }
    }
    Ok("degree < multiplicity, exponents distinct".into())
}

/// `|expansion - direct| ≤ 10 · max(error estimate, oracle bound)`.
fn check_numerical_match(ctx: &Context) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for p in dispatch_grid() {
        let spec = lib(p.spec())?;
        let e = lib(expand_general_with(&spec, 4, ctx.exec))?;
        for x in [0.05, 0.1, 0.2] {
            let d = direct(&spec, x, ctx)?;
            let err = (e.evaluate(x) - d.value).norm();
            let allowed = 10.0 * e.error_estimate(x).magnitude.max(d.error_bound);
            count += 1;
            if err > allowed {
                failures.push(format!("{p} x={x}: {err:.2e} > {allowed:.2e}"));
            }
        }
    }
    ensure(failures.is_empty(), || {
        format!("{}/{count} points fail: {}", failures.len(), failures.join("; "))
    })?;
    Ok(format!("{count} points"))
}

// ----------------------------------------------------------------- oracle

fn check_direct_closed_form(ctx: &Context) -> Outcome {
    let spec = lib(SeriesSpec::zeta(1.0, re(0.0)))?;
    for x in [0.1f64, 0.5, 1.0, 2.0] {
        let r = direct(&spec, x, ctx)?;
        let err = (r.value.re - 1.0 / x.exp_m1()).abs();
        ensure(err <= r.error_bound, || {
            format!("x = {x}: {err:e} > bound {:e}", r.error_bound)
        })?;
    }
    Ok("error bound holds at x ∈ {0.1, 0.5, 1, 2}".into())
}

fn check_cross_random(ctx: &Context) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let a = [1.0, 2.0, 3.0][rng.random_range(0..3)];
        let b = re(rng.random_range(-0.5..1.5));
        let spec = match rng.random_range(0..3) {
            0 => lib(SeriesSpec::zeta(a, b))?,
            1 => lib(SeriesSpec::zeta_squared(a, b))?,
            _ => lib(SeriesSpec::zeta_zeta_shift(a, b, re(rng.random_range(-1.0..1.0))))?,
        };
        let x = rng.random_range(0.5..2.0);
        let d = direct(&spec, x, ctx)?;
        let m = lib(barnes_integral_with(
            &spec,
            x,
            default_contour(&spec),
            1e-10,
            ctx.exec,
        ))?;
        let diff = (d.value - m.value).norm();
        ensure(diff <= d.error_bound + m.error_bound && diff <= 1e-7, || {
            format!("{spec} x={x}: |direct - barnes| = {diff:e}")
        })?;
        worst = worst.max(diff);
    }
    Ok(format!("10 random specs, worst diff {worst:.1e}"))
}

fn check_contour_independence(ctx: &Context) -> Outcome {
    let spec = lib(SeriesSpec::zeta_zeta_shift(2.0, re(1.0), re(1.0)))?;
    let c0 = default_contour(&spec);
    let r1 = lib(barnes_integral_with(&spec, 0.8, c0, 1e-10, ctx.exec))?;
    let r2 = lib(barnes_integral_with(&spec, 0.8, c0 + 1.3, 1e-10, ctx.exec))?;
    let diff = (r1.value - r2.value).norm();
    ensure(diff <= r1.error_bound + r2.error_bound, || {
        format!("diff {diff:e}")
    })?;
    Ok(format!("c = {c0} and {}: diff {diff:.1e}", c0 + 1.3))
}

// ------------------------------------------------------------- acceptance

fn acceptance_1() -> Outcome {
    let e = lib(corollary2(1.0, re(0.0), 10))?;
    let err = |x: f64| (e.evaluate(x).re - 1.0 / x.exp_m1()).abs();
    let (e1, e5) = (err(0.1), err(0.5));
    ensure(e1 <= 1e-12 && e5 <= 1e-10, || {
        format!("x=0.1: {e1:e}, x=0.5: {e5:e}")
    })?;
    Ok(format!("x=0.1: {e1:.1e}, x=0.5: {e5:.1e}"))
}

fn acceptance_2(ctx: &Context) -> Outcome {
    let spec = lib(SeriesSpec::zeta(2.0, re(0.0)))?;
    let theta = |x: f64| 0.5 * (PI / x).sqrt() - 0.5;
    let e3 = (direct(&spec, 0.3, ctx)?.value.re - theta(0.3)).abs();
    let e45 = (direct(&spec, 0.45, ctx)?.value.re - theta(0.45)).abs();
    ensure(e3 <= 1e-12 && e45 <= 1e-9, || {
        format!("x=0.3: {e3:e}, x=0.45: {e45:e}")
    })?;
    let e = lib(expand_general_with(&spec, 5, ctx.exec))?;
    let tail = e
        .terms
        .iter()
        .filter(|t| t.x_exponent.re > 0.0)
        .map(|t| t.logpoly.max_abs())
        .fold(0.0, f64::max);
    ensure(tail <= 1e-13, || format!("largest n ≥ 1 coefficient {tail:e}"))?;
    Ok(format!(
        "x=0.3: {e3:.1e}, x=0.45: {e45:.1e}, tail coeffs ≤ {tail:.1e}"
    ))
}

fn acceptance_3(ctx: &Context) -> Outcome {
    let spec = lib(SeriesSpec::zeta(2.0, re(1.0)))?;
    let e = lib(corollary2(2.0, re(1.0), 6))?;
    let err = (e.evaluate(0.1) - direct(&spec, 0.1, ctx)?.value).norm();
    let block = e
        .terms
        .iter()
        .find(|t| t.x_exponent == re(0.0))
        .ok_or("no constant block")?;
    let d0 = (block.logpoly.coeff(0) - re(euler_gamma() / 2.0)).norm();
    let d1 = (block.logpoly.coeff(1) - re(-0.5)).norm();
    ensure(err <= 1e-10 && d0 <= 1e-12 && d1 <= 1e-12, || {
        format!("error {err:e}, γ/2 off by {d0:e}, -1/2 off by {d1:e}")
    })?;
    Ok(format!(
        "error {err:.1e}; block (γ - log x)/2 within {:.1e}",
        d0.max(d1)
    ))
}

fn acceptance_4(ctx: &Context) -> Outcome {
    let spec = lib(SeriesSpec::zeta_zeta_shift(2.0, re(1.0), re(1.0)))?;
    let e = lib(corollary4(2.0, re(1.0), re(1.0), 4))?;
    let mut errs = [0.0; 3];
    for (err, x) in errs.iter_mut().zip([0.2, 0.1, 0.05]) {
        *err = (e.evaluate(x) - direct(&spec, x, ctx)?.value).norm();
    }
    let (r1, r2) = (errs[0] / errs[1], errs[1] / errs[2]);
    let detail = format!(
        "errors {:.2e}, {:.2e}, {:.2e}; ratios {r1:.3}, {r2:.3} (need > 256); x=0.1 error {:.2e} (need ≤ 1e-7)",
        errs[0], errs[1], errs[2], errs[1]
    );
    ensure(r1 > 256.0 && r2 > 256.0 && errs[1] <= 1e-7, || detail.clone())?;
    Ok(detail)
}

fn acceptance_6(ctx: &Context) -> Outcome {
    let x = 0.1;
    let theta = lib(SeriesSpec::zeta(2.0, re(0.0)))?;
    let d_theta = direct(&theta, x, ctx)?.value.re;
    let engine_theta = lib(expand_general_with(&theta, 5, ctx.exec))?.evaluate(x).re;
    let quoted_theta = 1.0 / (2.0 * (PI * x).sqrt());
    let ea = (engine_theta - d_theta).abs();
    let pa = (quoted_theta - d_theta).abs();

    let divisors = lib(SeriesSpec::zeta_squared(2.0, re(1.0)))?;
    let d_div = direct(&divisors, x, ctx)?.value.re;
    let engine_div = lib(expand_general_with(&divisors, 6, ctx.exec))?.evaluate(x).re;
    let l = x.ln();
    let g = euler_gamma();
    let g1 = lib(stieltjes(1))?;
    // quoted form: (6L² - 45L + 6γ² + π² - 24γ₁)/12 + Σ B_{2n}² (-x)^n / (4 n (n+1)!)
    let mut quoted_div = (6.0 * l * l - 45.0 * l + 6.0 * g * g + PI * PI - 24.0 * g1) / 12.0;
    for n in 1..=6u32 {
        let b2n = lib(bernoulli(2 * n as usize))?.to_f64().unwrap_or(f64::NAN);
        let fact: f64 = (1..=n + 1).map(f64::from).product();
        quoted_div += b2n * b2n * (-x).powi(n as i32) / (4.0 * f64::from(n) * fact);
    }
    let eb = (engine_div - d_div).abs();
    let pb = (quoted_div - d_div).abs();

    let detail = format!(
        "theta: engine {ea:.2e}, quoted {pa:.2e}; d(n)/n: engine {eb:.2e}, quoted {pb:.2e} (need engine ≤ 1e-9)"
    );
    ensure(ea <= 1e-9 && eb <= 1e-9, || detail.clone())?;
    Ok(detail)
}

fn acceptance_7(ctx: &Context) -> Outcome {
    let mut worst = 0.0f64;
    for (a, b) in [(1.0, 0.0), (2.0, 1.0)] {
        let specs = [
            lib(SeriesSpec::zeta(a, re(b)))?,
            lib(SeriesSpec::zeta_squared(a, re(b)))?,
            lib(SeriesSpec::zeta_zeta_shift(a, re(b), re(1.0)))?,
        ];
        for spec in &specs {
            let d = direct(spec, 1.0, ctx)?;
            let m = lib(barnes_integral_with(
                spec,
                1.0,
                default_contour(spec),
                1e-10,
                ctx.exec,
            ))?;
            let diff = (d.value - m.value).norm();
            ensure(diff <= 1e-7, || format!("{spec}: {diff:e}"))?;
            worst = worst.max(diff);
        }
    }
    Ok(format!("6 specs at x=1, worst |direct - barnes| {worst:.1e}"))
}

fn acceptance_8() -> Outcome {
    let parts = [
        check_zeta_values()?,
        check_stieltjes()?,
        check_glaisher()?,
        check_functional_equation()?,
    ];
    Ok(parts.join("; "))
}

fn acceptance_9() -> Outcome {
    Ok(format!("{}; {}", check_sigma()?, check_divisor_count()?))
}

fn acceptance_10() -> Outcome {
    let parts = [
        check_ring_laws()?,
        check_residue_linearity()?,
        check_invert()?,
        check_pole_multiplicity()?,
    ];
    Ok(parts.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::cache;

    #[test]
    fn names_are_unique_and_prefixed() {
        let checks = registry();
        let mut names: Vec<&str> = checks.iter().map(|c| c.name).collect();
        for c in &checks {
            assert!(c.name.starts_with(c.module));
        }
        names.sort();
        names.dedup();
        assert_eq!(names.len(), checks.len());
        assert_eq!(acceptance().len(), 10);
    }

    #[test]
    fn bernoulli_fault_is_detected() {
        let mut bad = cache::global().clone();
        bad.inject_bernoulli_fault();
        let ctx = Context {
            cache: &bad,
            exec: Execution::Sequential,
        };
        let report = run(Some("bernoulli"), &ctx);
        assert_eq!(report.results.len(), 1);
        assert!(!report.all_passed());
        assert!(report.to_string().contains("FAIL  specfun/bernoulli"));

        let good = Context {
            cache: cache::global(),
            exec: Execution::Sequential,
        };
        assert!(run(Some("bernoulli"), &good).all_passed());
    }

    #[test]
    fn filter_selects_module() {
        let ctx = Context {
            cache: cache::global(),
            exec: Execution::default(),
        };
        let report = run(Some("laurent"), &ctx);
        assert_eq!(report.results.len(), 3);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn grid_reaches_every_case() {
        let mut labels: Vec<String> = dispatch_grid()
            .iter()
            .map(|p| p.closed_form(6).unwrap().case_label)
            .map(|l| l.split(' ').next().unwrap().to_string())
            .collect();
        labels.sort();
        labels.dedup();
        assert_eq!(
            labels,
            [
                "sigma/both",
                "sigma/first",
                "sigma/generic",
                "sigma/second",
                "zeta/generic",
                "zeta/log",
                "zeta^2/double",
                "zeta^2/triple"
            ]
        );
    }
}
