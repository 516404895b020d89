use std::sync::OnceLock;

use num_rational::BigRational;

use super::bernoulli::{bernoulli_table, to_f64};
use super::zeta::{regular_taylor, stieltjes_limit, EmParams};
use crate::C64;

/// Half the number of cached Bernoulli numbers (`B_0..=B_{2M}`).
pub const BERNOULLI_HALF_BOUND: usize = 64;
/// Number of cached Stieltjes constants (`γ_0..γ_{STIELTJES_COUNT-1}`).
pub const STIELTJES_COUNT: usize = 7;
/// Cutoff used for the Stieltjes limits.
pub(crate) const STIELTJES_CUTOFF: usize = 40;

/// Constants computed once and shared read-only.
#[derive(Clone, Debug)]
pub struct SpecialValueCache {
    pub bernoulli: Vec<BigRational>,
    pub bernoulli_f64: Vec<f64>,
    pub stieltjes: Vec<f64>,
    pub glaisher_log: f64,
    pub zeta_em: EmParams,
}

impl SpecialValueCache {
    pub fn build() -> Self {
        let bernoulli = bernoulli_table(2 * BERNOULLI_HALF_BOUND);
        let bernoulli_f64: Vec<f64> = bernoulli.iter().map(to_f64).collect();
        let zeta_em = EmParams::default();
        let stieltjes = (0..STIELTJES_COUNT)
            .map(|n| stieltjes_limit(n, STIELTJES_CUTOFF, &bernoulli_f64))
            .collect::<Vec<_>>();
        // log A = (γ + log 2π - 6ζ'(2)/π²) / 12, with ζ'(2) = R'(2) - 1.
        let r = regular_taylor(C64::new(2.0, 0.0), 2, &bernoulli_f64, zeta_em);
        let zeta_prime_2 = r[1].re - 1.0;
        let pi2 = std::f64::consts::PI.powi(2);
        let glaisher_log =
            (stieltjes[0] + (2.0 * std::f64::consts::PI).ln() - 6.0 * zeta_prime_2 / pi2) / 12.0;
        Self {
            bernoulli,
            bernoulli_f64,
            stieltjes,
            glaisher_log,
            zeta_em,
        }
    }

    /// Overwrites `B_4` with a wrong value.  Used only to exercise the
    /// self-test's failure path.
    #[doc(hidden)]
    pub fn inject_bernoulli_fault(&mut self) {
        self.bernoulli[4] = BigRational::from_integer(1.into());
        self.bernoulli_f64[4] = 1.0;
    }
}

pub fn global() -> &'static SpecialValueCache {
    static CACHE: OnceLock<SpecialValueCache> = OnceLock::new();
    CACHE.get_or_init(SpecialValueCache::build)
}

pub(crate) fn bernoulli_f64() -> &'static [f64] {
    &global().bernoulli_f64
}
