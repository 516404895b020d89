//! Reference values of `S(x)` for validating expansions.
//!
//! [`direct_sum`] adds up the series itself; [`barnes_integral`] integrates
//! `Γ(s) Π_j ζ(a a_j s + b_j + b) x^{-s} / (2πi)` along a vertical line.

mod barnes;
mod direct;

pub use barnes::{barnes_integral, barnes_integral_with, contour_threshold, default_contour};
pub use direct::{direct_sum, direct_sum_with, DEFAULT_TERM_CAP};

use crate::C64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    DirectSum,
    Barnes,
}

/// How far `error_bound` can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// A bound on the tail given the growth constant calibrated on the
    /// computed coefficients, plus a rounding allowance.
    Calibrated,
    /// Quadrature error estimate plus a truncation estimate from the decay
    /// of Γ on vertical lines.
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleResult {
    pub value: C64,
    pub error_bound: f64,
    pub kind: OracleKind,
    pub bound: BoundKind,
    /// Series terms summed, or integrand evaluations.
    pub evaluations: usize,
}

impl OracleResult {
    pub fn is_heuristic(&self) -> bool {
        self.bound == BoundKind::Heuristic
    }
}
