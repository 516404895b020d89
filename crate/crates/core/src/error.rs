use crate::C64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Argument sits on (or within 1e-12 of) a pole.  For Γ this is the
    /// non-positive integer; for ζ it is 1.
    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: i64 },

    #[error("{what}: requested {requested}, capacity is {max}")]
    Capacity {
        what: &'static str,
        requested: usize,
        max: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series base points differ: {left} vs {right}")]
    BaseMismatch { left: C64, right: C64 },

    #[error("series not invertible: {0}")]
    NotInvertible(&'static str),

    #[error("series known only through ε^{order}, coefficient ε^{needed} requested")]
    InsufficientOrder { order: i32, needed: i32 },

    #[error("contour abscissa c = {c} must exceed {required}")]
    Precondition { c: f64, required: f64 },

    #[error("x = {x} too small for direct summation: {cap} terms reach a tail bound of {achievable:e}")]
    OracleLimit { x: f64, cap: usize, achievable: f64 },

    /// A term of the requested expansion is not representable in `f64`.
    #[error("expansion to order {order} overflows double precision at x^{exponent}")]
    Overflow { order: usize, exponent: C64 },

    #[error("internal error: {0}")]
    Internal(String),
}
