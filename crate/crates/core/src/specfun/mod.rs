//! Double-precision special functions: Γ, ψ, polygamma, ζ and its
//! derivatives, local expansions of Γ and ζ, Bernoulli numbers, Stieltjes
//! constants and Glaisher's constant.

mod bernoulli;
pub mod cache;
mod gamma;
mod series;
mod zeta;

use num_rational::BigRational;

use crate::error::{Error, Result};

pub use cache::{SpecialValueCache, BERNOULLI_HALF_BOUND, STIELTJES_COUNT};
pub use gamma::{digamma, gamma, gamma_laurent, polygamma, GAMMA_LAURENT_MAX, POLYGAMMA_MAX};
pub use zeta::{
    stieltjes, zeta, zeta_derivative, zeta_laurent, zeta_with, EmParams, ZETA_DERIVATIVE_MAX,
    ZETA_LAURENT_MAX,
};

/// Distance below which an argument counts as sitting on a pole.
pub const POLE_TOL: f64 = 1e-12;

/// Exact `B_m`, `m ≤ 128`.
pub fn bernoulli(m: usize) -> Result<BigRational> {
    cache::global().bernoulli.get(m).cloned().ok_or(Error::Capacity {
        what: "bernoulli index",
        requested: m,
        max: 2 * BERNOULLI_HALF_BOUND,
    })
}

/// Euler's constant γ (= γ₀).
pub fn euler_gamma() -> f64 {
    cache::global().stieltjes[0]
}

/// `log A` for Glaisher's constant A.
pub fn glaisher_log() -> f64 {
    cache::global().glaisher_log
}
