//! Truncated complex power series `Σ a_k ε^k`, `k < n`, used while building
//! Taylor expansions of Γ and ζ.

use crate::C64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

pub(crate) fn mul(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![ZERO; n];
    for (i, &ai) in a.iter().enumerate().take(n) {
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `exp(a(ε))` through `n` terms.
pub(crate) fn exp(a: &[C64], n: usize) -> Vec<C64> {
    let a0 = a.first().copied().unwrap_or(ZERO);
    let mut b = vec![ZERO; n];
    if n == 0 {
        return b;
    }
    b[0] = ONE;
    for k in 1..n {
        let mut acc = ZERO;
        for j in 1..=k {
            if let Some(&aj) = a.get(j) {
                acc += aj * b[k - j] * j as f64;
            }
        }
        b[k] = acc / k as f64;
    }
    let scale = a0.exp();
    b.iter().map(|&c| c * scale).collect()
}

/// Coefficients of `c · exp(λ ε)`.
pub(crate) fn scaled_exp(c: C64, lambda: C64, n: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(n);
    let mut term = c;
    for k in 0..n {
        out.push(term);
        term = term * lambda / (k + 1) as f64;
    }
    out
}

/// Substitutes `ε → -ε`.
pub(crate) fn reflect(a: &[C64]) -> Vec<C64> {
    a.iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_linear_series() {
        let e = exp(&[ZERO, ONE], 6);
        let mut f = 1.0;
        for (k, c) in e.iter().enumerate() {
            if k > 0 {
                f *= k as f64;
            }
            assert!((c.re - 1.0 / f).abs() < 1e-15);
        }
        let scaled = exp(&[C64::new(2.0_f64.ln(), 0.0), ONE], 3);
        assert!((scaled[2].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn product_truncates() {
        let p = mul(&[ONE, ONE], &[ONE, -ONE], 3);
        assert_eq!(p, vec![ONE, ZERO, -ONE]);
        assert_eq!(mul(&[ONE, ONE], &[ONE, ONE], 1), vec![ONE]);
    }
}
