//! Permanent of a 0-1 matrix by inclusion-exclusion over column subsets,
//! visiting subsets in Gray-code order so each step changes one column.

use num_bigint::BigUint;

use super::Tally;
use crate::error::{check_cap, Result};
use crate::graph::{bits, ZeroOneMatrix};

pub const PERMANENT_MAX_N: usize = 24;

/// `perm(A) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij`.
pub fn permanent(a: &ZeroOneMatrix) -> Result<BigUint> {
    let n = a.n();
    check_cap("matrix order for the permanent", n, PERMANENT_MAX_N)?;
    if n == 0 {
        return Ok(BigUint::from(1u32));
    }
    if (0..n).any(|i| a.row(i) == 0) {
        return Ok(BigUint::default());
    }
    let cols: Vec<u64> = (0..n)
        .map(|j| (0..n).filter(|&i| a.get(i, j)).fold(0u64, |m, i| m | 1 << i))
        .collect();
    let mut sums = vec![0u32; n];
    let mut zero_rows = n;
    let mut plus = Tally::default();
    let mut minus = Tally::default();
    let mut gray = 0u64;
    for k in 1u64..1 << n {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for i in bits(cols[j]) {
            if adding {
                if sums[i] == 0 {
                    zero_rows -= 1;
                }
                sums[i] += 1;
            } else {
                sums[i] -= 1;
                if sums[i] == 0 {
                    zero_rows += 1;
                }
            }
        }
        if zero_rows > 0 {
            continue;
        }
        // each factor is at most 24, so the product stays below 2^111
        let prod = sums.iter().fold(1u128, |acc, &s| acc * s as u128);
        if (n - gray.count_ones() as usize) % 2 == 0 {
            plus.add(prod);
        } else {
            minus.add(prod);
        }
    }
    Ok(plus.total() - minus.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Sum over all permutations.
    fn oracle(a: &ZeroOneMatrix) -> u64 {
        fn rec(a: &ZeroOneMatrix, i: usize, used: u64) -> u64 {
            if i == a.n() {
                return 1;
            }
            bits(a.row(i) & !used).map(|j| rec(a, i + 1, used | 1 << j)).sum()
        }
        rec(a, 0, 0)
    }

    #[test]
    fn examples() {
        assert_eq!(permanent(&ZeroOneMatrix::identity(3).unwrap()).unwrap(), 1u32.into());
        assert_eq!(permanent(&ZeroOneMatrix::all_ones(3).unwrap()).unwrap(), 6u32.into());
        assert_eq!(permanent(&ZeroOneMatrix::ones_blocks(&[2, 2]).unwrap()).unwrap(), 4u32.into());
        assert_eq!(permanent(&ZeroOneMatrix::zeros(0).unwrap()).unwrap(), 1u32.into());
        let big = permanent(&ZeroOneMatrix::all_ones(20).unwrap()).unwrap();
        assert_eq!(big, crate::numeric::factorial(20));
        assert!(permanent(&ZeroOneMatrix::zeros(25).unwrap()).is_err());
    }

    #[test]
    fn matches_permutation_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let p: f64 = rng.gen_range(0.3..0.9);
            let mut a = ZeroOneMatrix::zeros(n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, rng.gen_bool(p));
                }
            }
            assert_eq!(permanent(&a).unwrap(), BigUint::from(oracle(&a)));
        }
    }
}
