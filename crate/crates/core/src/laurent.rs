//! Truncated Laurent series in `ε = s - s₀` whose coefficients are
//! polynomials in `L = log x`.
//!
//! The `x^{-s}` factor of the Mellin integrand contributes `exp(-L ε)`, so every
//! residue is a polynomial in `L`; keeping `L` symbolic means the residue of a
//! pole of multiplicity `m` comes out as an exact degree `< m` polynomial
//! rather than a number tied to one particular `x`.
//!
//! A series records its valuation and the highest power of `ε` it knows
//! (`order`).  Arithmetic propagates the order so truncation loss is never
//! silent: a product of `f` (valuation `v₁`, order `o₁`) and `g` (`v₂`, `o₂`)
//! is known through `min(o₁ + v₂, o₂ + v₁)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Polynomial `Σ c_m L^m` in `L = log x` with complex coefficients.
///
/// Trailing zero coefficients are trimmed; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LogPolynomial {
    coeffs: Vec<C64>,
}

impl LogPolynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `L`.
    pub fn log_x() -> Self {
        Self::new(vec![ZERO, ONE])
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `L^m` (zero beyond the degree).
    pub fn coeff(&self, m: usize) -> C64 {
        self.coeffs.get(m).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Horner evaluation at `L = log_x`.
    pub fn eval(&self, log_x: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * log_x + c)
    }
}

impl Add for &LogPolynomial {
    type Output = LogPolynomial;

    fn add(self, rhs: &LogPolynomial) -> LogPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LogPolynomial::new((0..n).map(|m| self.coeff(m) + rhs.coeff(m)).collect())
    }
}

impl Sub for &LogPolynomial {
    type Output = LogPolynomial;

    fn sub(self, rhs: &LogPolynomial) -> LogPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        LogPolynomial::new((0..n).map(|m| self.coeff(m) - rhs.coeff(m)).collect())
    }
}

impl Mul for &LogPolynomial {
    type Output = LogPolynomial;

    fn mul(self, rhs: &LogPolynomial) -> LogPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LogPolynomial::zero();
        }
        let mut out = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &p) in self.coeffs.iter().enumerate() {
            for (j, &q) in rhs.coeffs.iter().enumerate() {
                out[i + j] += p * q;
            }
        }
        LogPolynomial::new(out)
    }
}

impl Neg for &LogPolynomial {
    type Output = LogPolynomial;

    fn neg(self) -> LogPolynomial {
        self.scale(-ONE)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LogPolynomial {
            type Output = LogPolynomial;
            fn $m(self, rhs: LogPolynomial) -> LogPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LogPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "({})", c)?;
            }
            match m {
                0 => {}
                1 => write!(f, "·L")?,
                _ => write!(f, "·L^{m}")?,
            }
        }
        Ok(())
    }
}

/// Truncated Laurent series `Σ_{k=v}^{order} c_k ε^k` about `base`.
///
/// The leading stored coefficient is non-zero.  A series with no stored
/// coefficients is zero through `order`; its valuation is then `order + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    base: C64,
    valuation: i32,
    coeffs: Vec<LogPolynomial>,
}

impl LaurentSeries {
    /// Series with coefficients of `ε^valuation, ε^{valuation+1}, …`; the
    /// order is `valuation + coeffs.len() - 1`.  Leading zeros are stripped.
    pub fn new(base: C64, valuation: i32, coeffs: Vec<LogPolynomial>) -> Self {
        let mut s = Self {
            base,
            valuation,
            coeffs,
        };
        s.normalize();
        s
    }

    /// Complex (L-free) coefficients starting at `ε^valuation`.
    pub fn from_complex(base: C64, valuation: i32, coeffs: &[C64]) -> Self {
        Self::new(
            base,
            valuation,
            coeffs.iter().map(|&c| LogPolynomial::constant(c)).collect(),
        )
    }

    /// A polynomial in `ε` treated as exact through `ε^order`.
    pub fn polynomial(base: C64, coeffs: &[C64], order: i32) -> Self {
        let len = (order + 1).max(0) as usize;
        let mut padded: Vec<C64> = coeffs.iter().copied().take(len).collect();
        padded.resize(len, ZERO);
        Self::from_complex(base, 0, &padded)
    }

    /// `c·ε^power`, exact through `ε^order`.
    pub fn monomial(base: C64, power: i32, c: C64, order: i32) -> Self {
        let len = (order - power + 1).max(0) as usize;
        let mut coeffs = vec![ZERO; len];
        if let Some(first) = coeffs.first_mut() {
            *first = c;
        }
        Self::from_complex(base, power, &coeffs)
    }

    pub fn one(base: C64, order: i32) -> Self {
        Self::monomial(base, 0, ONE, order)
    }

    pub fn zero(base: C64, order: i32) -> Self {
        Self {
            base,
            valuation: order + 1,
            coeffs: Vec::new(),
        }
    }

    /// `x^{-s} / x^{-s₀} = exp(-L ε) = Σ_{k≤order} (-L)^k ε^k / k!`.
    ///
    /// The factor `x^{-s₀}` itself is the exponent of the resulting term and
    /// is handled by the caller.
    pub fn x_power_series(base: C64, order: i32) -> Self {
        let mut coeffs = Vec::new();
        let mut factorial = 1.0;
        for k in 0..=order.max(-1) {
            if k > 0 {
                factorial *= k as f64;
            }
            let mut c = vec![ZERO; k as usize + 1];
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            c[k as usize] = C64::new(sign / factorial, 0.0);
            coeffs.push(LogPolynomial::new(c));
        }
        Self::new(base, 0, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i32;
        }
    }

    pub fn base(&self) -> C64 {
        self.base
    }

    pub fn valuation(&self) -> i32 {
        self.valuation
    }

    /// Highest power of `ε` whose coefficient is known.
    pub fn order(&self) -> i32 {
        self.valuation + self.coeffs.len() as i32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `ε^k`, or `None` when `k` lies beyond the truncation.
    pub fn coeff(&self, k: i32) -> Option<LogPolynomial> {
        if k > self.order() {
            None
        } else if k < self.valuation {
            Some(LogPolynomial::zero())
        } else {
            Some(self.coeffs[(k - self.valuation) as usize].clone())
        }
    }

    fn coeff_ref(&self, k: i32) -> Option<&LogPolynomial> {
        if k < self.valuation || k > self.order() {
            None
        } else {
            Some(&self.coeffs[(k - self.valuation) as usize])
        }
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch {
                left: self.base,
                right: other.base,
            })
        }
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let valuation = self.valuation + other.valuation;
        let order = (self.order() + other.valuation).min(other.order() + self.valuation);
        let mut coeffs = Vec::new();
        for k in valuation..=order {
            let mut acc = LogPolynomial::zero();
            for i in self.valuation..=(k - other.valuation) {
                if let (Some(p), Some(q)) = (self.coeff_ref(i), other.coeff_ref(k - i)) {
                    acc = &acc + &(p * q);
                }
            }
            coeffs.push(acc);
        }
        Ok(self.result(valuation, order, coeffs))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_base(other)?;
        let valuation = self.valuation.min(other.valuation);
        let order = self.order().min(other.order());
        let zero = LogPolynomial::zero();
        let coeffs = (valuation..=order)
            .map(|k| {
                let p = self.coeff_ref(k).unwrap_or(&zero);
                let q = other.coeff_ref(k).unwrap_or(&zero);
                p + q
            })
            .collect();
        Ok(self.result(valuation, order, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-ONE)
    }

    pub fn scale(&self, factor: C64) -> Self {
        let order = self.order();
        let coeffs = self.coeffs.iter().map(|c| c.scale(factor)).collect();
        self.result(self.valuation, order, coeffs)
    }

    /// Multiplies every coefficient by a polynomial in `L`.
    pub fn scale_poly(&self, factor: &LogPolynomial) -> Self {
        let order = self.order();
        let coeffs = self.coeffs.iter().map(|c| c * factor).collect();
        self.result(self.valuation, order, coeffs)
    }

    /// Substitutes `ε → c·ε`: the coefficient of `ε^k` is multiplied by `c^k`.
    pub fn rescale(&self, c: C64) -> Self {
        let order = self.order();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, p)| p.scale(c.powi(self.valuation + i as i32)))
            .collect();
        self.result(self.valuation, order, coeffs)
    }

    /// The same coefficients about another base point, for series obtained
    /// by a change of variable.
    pub fn with_base(&self, base: C64) -> Self {
        Self { base, ..self.clone() }
    }

    /// Multiplies by `ε^power` (exact).
    pub fn shift(&self, power: i32) -> Self {
        Self {
            base: self.base,
            valuation: self.valuation + power,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Drops every coefficient above `ε^order`.
    pub fn truncate(&self, order: i32) -> Self {
        let keep = (order - self.valuation + 1).clamp(0, self.coeffs.len() as i32) as usize;
        let coeffs = self.coeffs[..keep].to_vec();
        self.result(self.valuation, order.min(self.order()), coeffs)
    }

    /// Reciprocal series `g` with `f·g = 1 + O(ε^{k+1})`, where
    /// `k = min(order, self.order() - self.valuation())`.
    ///
    /// Only series whose leading coefficient is a non-zero constant (free of
    /// `L`) are invertible.
    pub fn invert(&self, order: i32) -> Result<Self> {
        let lead = self
            .coeffs
            .first()
            .ok_or(Error::NotInvertible("series is zero"))?;
        if !lead.is_constant() {
            return Err(Error::NotInvertible("leading coefficient depends on log x"));
        }
        let c0 = lead.coeff(0);
        let inv0 = ONE / c0;
        let kmax = order.min(self.order() - self.valuation).max(0) as usize;
        let mut h: Vec<LogPolynomial> = Vec::with_capacity(kmax + 1);
        h.push(LogPolynomial::constant(inv0));
        for k in 1..=kmax {
            let mut acc = LogPolynomial::zero();
            for i in 1..=k {
                acc = &acc + &(&self.coeffs[i] * &h[k - i]);
            }
            h.push(acc.scale(-inv0));
        }
        Ok(Self::new(self.base, -self.valuation, h))
    }

    /// Coefficient of `ε^{-1}`.
    pub fn residue(&self) -> Result<LogPolynomial> {
        self.coeff(-1).ok_or(Error::InsufficientOrder {
            order: self.order(),
            needed: -1,
        })
    }

    fn result(&self, valuation: i32, order: i32, coeffs: Vec<LogPolynomial>) -> Self {
        if coeffs.is_empty() {
            Self::zero(self.base, order)
        } else {
            Self::new(self.base, valuation, coeffs)
        }
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·ε^{}", self.valuation + i as i32)?;
        }
        if !self.coeffs.is_empty() {
            write!(f, " + ")?;
        }
        write!(f, "O(ε^{})", self.order() + 1)
    }
}
