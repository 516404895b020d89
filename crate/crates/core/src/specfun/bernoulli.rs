use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact Bernoulli numbers `B_0..=B_max` from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`
/// (so `B_1 = -1/2`).
pub fn bernoulli_table(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
    b.push(BigRational::one());
    // row holds C(m+1, j) for j = 0..=m+1
    let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for m in 1..=max {
        let mut next = vec![BigInt::one(); m + 2];
        for j in 1..=m {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
        if m > 1 && m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += BigRational::from_integer(row[j].clone()) * bj;
            }
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
