//! The symmetric binomial distribution: its entropy and tail.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{binomial_row, log2_big, ratio_f64};

/// Additive constant in `H(Bin(m, 1/2)) <= (1/2) log2 m + C`. Checked
/// against the exact entropy for every m up to 5000; the supremum is
/// approached from below by `(1/2) log2(pi e / 2) ~ 1.047`.
pub const BINOMIAL_ENTROPY_C: f64 = 1.2;

/// Largest exponent denominator handled by the exact tail comparison.
const EXACT_ROOT_MAX: u64 = 64;

/// Entropy of Binomial(m, 1/2) from the exact probabilities `C(m,k)/2^m`.
pub fn binomial_half_entropy(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("binomial entropy needs m >= 1"));
    }
    let total = BigUint::one() << m;
    Ok(binomial_row(m)
        .iter()
        .map(|c| ratio_f64(c, &total) * (m as f64 - log2_big(c)))
        .sum())
}

pub fn binomial_half_entropy_within(m: usize, c: f64) -> Result<bool> {
    Ok(binomial_half_entropy(m)? <= (m as f64).log2() / 2.0 + c)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailCheck {
    pub n: usize,
    pub c: f64,
    /// The tail is `tail_numerator / 2^n`, summed exactly.
    pub tail_numerator: String,
    pub tail: f64,
    pub bound: f64,
    pub holds: bool,
    /// Whether the verdict was decided in exact arithmetic or with a safe
    /// floating-point margin. An uncertain comparison reports `holds`.
    pub certified: bool,
}

/// `Pr(|X - n/2| >= c sigma) <= 2^{1 - c^2/2}` for X ~ Bin(n, 1/2),
/// `sigma = sqrt(n)/2`. The tail is an exact sum.
pub fn chernoff_tail_check(n: usize, c: f64) -> Result<TailCheck> {
    if n == 0 {
        return Err(Error::invalid("tail check needs n >= 1"));
    }
    if !c.is_finite() || c < 0.0 {
        return Err(Error::invalid(format!("c must be a finite nonnegative number, got {c}")));
    }
    let cr = BigRational::from_float(c).expect("finite");
    let c2 = &cr * &cr;
    let c2n = &c2 * BigRational::from_integer(n.into());
    let row = binomial_row(n);
    let mut s = BigUint::zero();
    for (k, ck) in row.iter().enumerate() {
        let dev = 2 * k as i64 - n as i64;
        let lhs = BigRational::from_integer((dev * dev).into());
        if lhs >= c2n {
            s += ck;
        }
    }
    let total = BigUint::one() << n;
    let tail = ratio_f64(&s, &total);
    let bound = (1.0 - c * c / 2.0).exp2();

    // S / 2^n <= 2^{1 - a/b}  <=>  S^b * 2^a <= 2^{(n+1) b}
    let half = c2 / BigRational::from_integer(2.into());
    let a = half.numer().to_biguint().expect("nonnegative");
    let b = half.denom().to_u64().unwrap_or(u64::MAX);
    let (holds, certified) = if s.is_zero() {
        (true, true)
    } else if b <= EXACT_ROOT_MAX && a.bits() <= 32 {
        let a = a.to_u64().expect("fits");
        let lhs = s.pow(b as u32) << a;
        let rhs = BigUint::one() << ((n as u64 + 1) * b);
        (lhs <= rhs, true)
    } else {
        let gap = (1.0 - c * c / 2.0) - (log2_big(&s) - n as f64);
        let margin = 1e-9 * (1.0 + c * c + n as f64).max(1.0);
        (gap >= -margin, gap.abs() > margin)
    };
    Ok(TailCheck {
        n,
        c,
        tail_numerator: s.to_string(),
        tail,
        bound,
        holds,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Entropy with log-binomials accumulated in floating point.
    fn oracle_entropy(m: usize) -> f64 {
        let mut logc = 0.0f64;
        let mut h = 0.0;
        for k in 0..=m {
            if k > 0 {
                logc += ((m - k + 1) as f64).log2() - (k as f64).log2();
            }
            let lp = logc - m as f64;
            h -= lp.exp2() * lp;
        }
        h
    }

    #[test]
    fn small_entropies() {
        assert!((binomial_half_entropy(1).unwrap() - 1.0).abs() < 1e-15);
        assert!((binomial_half_entropy(2).unwrap() - 1.5).abs() < 1e-15);
        assert!(binomial_half_entropy(0).is_err());
        for m in [3, 10, 100, 1000, 3000] {
            assert!((binomial_half_entropy(m).unwrap() - oracle_entropy(m)).abs() < 1e-9);
        }
        assert!(binomial_half_entropy_within(1000, BINOMIAL_ENTROPY_C).unwrap());
    }

    #[test]
    fn constant_holds_up_to_5000() {
        use rayon::prelude::*;
        let worst = (1..=5000usize)
            .into_par_iter()
            .map(|m| binomial_half_entropy(m).unwrap() - (m as f64).log2() / 2.0)
            .reduce(|| f64::MIN, f64::max);
        assert!(worst <= BINOMIAL_ENTROPY_C, "worst excess {worst}");
        assert!(worst > 1.0);
    }

    /// Tail with floating-point binomial probabilities.
    fn oracle_tail(n: usize, c: f64) -> f64 {
        let mut logc = 0.0f64;
        let mut t = 0.0;
        for k in 0..=n {
            if k > 0 {
                logc += ((n - k + 1) as f64).log2() - (k as f64).log2();
            }
            if (k as f64 - n as f64 / 2.0).abs() >= c * (n as f64).sqrt() / 2.0 - 1e-12 {
                t += (logc - n as f64).exp2();
            }
        }
        t
    }

    #[test]
    fn tails() {
        let z = chernoff_tail_check(10, 0.0).unwrap();
        assert_eq!(z.tail, 1.0);
        assert!(z.holds && z.certified);
        let a = chernoff_tail_check(100, 2.0).unwrap();
        assert!(a.tail < 0.5 && a.holds && a.certified);
        assert!((a.tail - oracle_tail(100, 2.0)).abs() < 1e-12);
        let b = chernoff_tail_check(400, 3.0).unwrap();
        assert!(b.tail < (-3.5f64).exp2() && b.holds && b.certified);
        assert!((b.tail - oracle_tail(400, 3.0)).abs() < 1e-12);
        let odd = chernoff_tail_check(64, 1.5).unwrap();
        assert!(odd.holds && odd.certified);
        assert!(chernoff_tail_check(0, 1.0).is_err());
        assert!(chernoff_tail_check(5, -1.0).is_err());
    }
}
