//! Complete asymptotic expansions, as `x → 0⁺`, of q-series
//!
//! ```text
//! S(x) = Σ_{n≥1} f(n) n^{-b} exp(-n^a x),   Σ f(n) n^{-s} = Π_j ζ(a_j s + b_j)
//! ```
//!
//! The expansion is the sum of residues of `Γ(s) Π_j ζ(a·a_j s + b_j + b) x^{-s}`
//! at its poles, each residue a term `x^p · P(log x)` with `P` a polynomial.
//! Residues of any multiplicity come from truncated Laurent arithmetic
//! ([`laurent`]); the closed forms for `ζ(s)`, `ζ(s)²` and `ζ(s)ζ(s-α)` are
//! available as independent constructors in [`expansion`].  Every expansion can
//! be checked against two oracles for `S(x)` ([`oracle`]): direct summation and
//! numerical contour integration of the Mellin-Barnes integral.
//!
//! Everything runs in double precision.  With the default `parallel` feature,
//! residues, summation blocks and quadrature panels are evaluated on the rayon
//! pool; results are reduced in a fixed order so both execution modes produce
//! bit-identical output.

// `!(v > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dirichlet;
pub mod error;
pub mod exec;
pub mod expansion;
pub mod laurent;
pub mod oracle;
pub mod selftest;
pub mod specfun;
pub mod sum;

pub use num_complex::Complex64 as C64;

pub use dirichlet::{coeffs_product, sigma_alpha, DirichletCoefficients, SeriesSpec, ZetaFactor};
pub use error::{Error, Result};
pub use exec::Execution;
pub use expansion::{
    corollary2, corollary3, corollary4, enumerate_poles, expand_general, q_to_x, residue_at,
    AsymptoticExpansion, ErrorEstimate, ExpansionTerm, Pole,
};
pub use laurent::{LaurentSeries, LogPolynomial};
pub use oracle::{barnes_integral, direct_sum, OracleResult};
