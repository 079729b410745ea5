//! Big-integer helpers shared by the counters and bounds.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub fn factorial(n: usize) -> BigUint {
    (2..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// log2 of a positive big integer, accurate to f64 precision at any size.
pub fn log2_big(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

/// `num / den` as f64 without overflowing on large operands.
pub fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let bits = num.bits().max(den.bits());
    if bits <= 1000 {
        return num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY);
    }
    (log2_big(num) - log2_big(den)).exp2()
}

/// Stirling numbers of the second kind times k!: surjections from a d-set
/// onto an a-set, by inclusion-exclusion.
pub fn surjections(d: usize, a: usize) -> BigUint {
    use num_bigint::BigInt;
    let mut total = BigInt::zero();
    for j in 0..=a {
        let term = BigInt::from(binomial(a, j)) * BigInt::from(BigUint::from(a - j).pow(d as u32));
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total.to_biguint().expect("surjection count is nonnegative")
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        let row = binomial_row(6);
        assert_eq!(row.iter().map(|c| c.to_u64().unwrap()).collect::<Vec<_>>(), vec![1, 6, 15, 20, 15, 6, 1]);
        assert_eq!(surjections(3, 2), BigUint::from(6u32));
        assert_eq!(surjections(4, 4), BigUint::from(24u32));
        assert_eq!(surjections(2, 3), BigUint::zero());
    }

    #[test]
    fn logs_of_large_numbers() {
        let x = BigUint::one() << 3000u32;
        assert!((log2_big(&x) - 3000.0).abs() < 1e-9);
        let y = BigUint::from(3u32) << 2000u32;
        assert!((log2_big(&y) - (2000.0 + 3f64.log2())).abs() < 1e-9);
        assert!((ratio_f64(&y, &(BigUint::one() << 2001u32)) - 1.5).abs() < 1e-12);
    }
}
