//! Bounds of the form `scalar * prod_i a_i^(1/m_i)` and their exact
//! comparison with counts, plus fractional covers and packings.

mod lp;
mod theorems;

pub use lp::{
    fractional_cover, fractional_independence, maximize, Constraint, FractionalWeights, LpSolution, Sense, WeightKind,
    LP_MAX_VARIABLES,
};
pub use theorems::{
    HSTAR_MAX_VERTICES,
    binom_sum_bound, bregman_bound, coin_lower_bounds, colorings_bip_bound, edge_cover_number, embed_upper_bound,
    homs_bip_bound, hstar_build, independence_number, kahn_lovasz_bound, loomis_whitney_check,
    matching_asymptotic_reference, non_bip_colorings_closed, nonbip_order_bound, nonbip_q3_relaxed, order_p_values,
    BinomSumCheck, HStar,
};

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{lcm, log2_big};

/// Largest common root denominator the exact comparison will raise to.
pub const ROOT_LCM_MAX: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootProductBound {
    factors: Vec<(BigUint, u64)>,
    scalar: BigRational,
}

impl RootProductBound {
    pub fn one() -> Self {
        RootProductBound {
            factors: Vec::new(),
            scalar: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        RootProductBound {
            factors: Vec::new(),
            scalar: BigRational::zero(),
        }
    }

    pub fn integer(value: impl Into<BigUint>) -> Self {
        let value = value.into();
        if value.is_zero() {
            return Self::zero();
        }
        Self::one().with_factor(value, 1).expect("root 1 is valid")
    }

    pub fn new(factors: Vec<(BigUint, u64)>, scalar: BigRational) -> Result<Self> {
        if scalar.is_negative() {
            return Err(Error::invalid("scalar must be nonnegative"));
        }
        let mut b = RootProductBound {
            factors: Vec::new(),
            scalar,
        };
        for (a, m) in factors {
            b = b.with_factor(a, m)?;
        }
        Ok(b)
    }

    /// Multiplies by `base^(1/root)`.
    pub fn with_factor(mut self, base: BigUint, root: u64) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::invalid("factor bases must be at least 1"));
        }
        if root == 0 {
            return Err(Error::invalid("root denominators must be at least 1"));
        }
        self.factors.push((base, root));
        Ok(self)
    }

    pub fn with_scalar(mut self, s: BigRational) -> Result<Self> {
        if s.is_negative() {
            return Err(Error::invalid("scalar must be nonnegative"));
        }
        self.scalar *= s;
        Ok(self)
    }

    pub fn times(mut self, other: &RootProductBound) -> Self {
        self.factors.extend(other.factors.iter().cloned());
        self.scalar *= &other.scalar;
        self
    }

    pub fn factors(&self) -> &[(BigUint, u64)] {
        &self.factors
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    /// Least common multiple of the root denominators.
    pub fn root_lcm(&self) -> Result<u64> {
        let mut m = 1u64;
        for &(_, r) in &self.factors {
            m = lcm(m, r);
            if m > ROOT_LCM_MAX {
                return Err(Error::CapExceeded {
                    what: "common root denominator",
                    value: m as usize,
                    cap: ROOT_LCM_MAX as usize,
                });
            }
        }
        Ok(m)
    }

    /// Same value with exact roots taken, factors sharing a root merged
    /// and unit bases dropped.
    pub fn normalized(&self) -> Self {
        let mut by_root: std::collections::BTreeMap<u64, BigUint> = Default::default();
        for (a, r) in &self.factors {
            if !a.is_one() {
                let (a, r) = exact_root(a, *r);
                *by_root.entry(r).or_insert_with(BigUint::one) *= a;
            }
        }
        RootProductBound {
            factors: by_root.into_iter().map(|(r, a)| (a, r)).collect(),
            scalar: self.scalar.clone(),
        }
    }

    pub fn log2(&self) -> f64 {
        if self.scalar.is_zero() {
            return f64::NEG_INFINITY;
        }
        let s = log2_big(&self.scalar.numer().magnitude().clone()) - log2_big(&self.scalar.denom().magnitude().clone());
        s + self.factors.iter().map(|(a, r)| log2_big(a) / *r as f64).sum::<f64>()
    }

    pub fn to_f64(&self) -> f64 {
        self.log2().exp2()
    }

    /// `(numerator, denominator)` of the value raised to the power `m`,
    /// where `m` is a multiple of every root denominator.
    fn raised(&self, m: u64) -> (BigUint, BigUint) {
        let e = u32::try_from(m).expect("capped");
        let mut num = self.scalar.numer().magnitude().pow(e);
        let den = self.scalar.denom().magnitude().pow(e);
        for (a, r) in &self.factors {
            num *= a.pow(u32::try_from(m / r).expect("capped"));
        }
        (num, den)
    }
}

impl std::fmt::Display for RootProductBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.scalar.is_one() || self.factors.is_empty() {
            parts.push(self.scalar.to_string());
        }
        for (a, r) in &self.factors {
            if *r == 1 {
                parts.push(a.to_string());
            } else {
                parts.push(format!("{a}^(1/{r})"));
            }
        }
        write!(f, "{}", parts.join(" * "))
    }
}

impl Serialize for RootProductBound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let factors: Vec<(String, u64)> = self.factors.iter().map(|(a, r)| (a.to_string(), *r)).collect();
        let mut st = s.serialize_struct("RootProductBound", 2)?;
        st.serialize_field("factors", &factors)?;
        st.serialize_field("scalar", &format!("{}/{}", self.scalar.numer(), self.scalar.denom()))?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for RootProductBound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(serde::Deserialize)]
        struct Raw {
            factors: Vec<(String, u64)>,
            scalar: String,
        }
        let raw = Raw::deserialize(d)?;
        let factors = raw
            .factors
            .into_iter()
            .map(|(a, r)| a.parse::<BigUint>().map(|a| (a, r)).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let scalar = parse_rational(&raw.scalar).map_err(D::Error::custom)?;
        RootProductBound::new(factors, scalar).map_err(D::Error::custom)
    }
}

/// `p/q` or an integer, nonnegative.
/// `a^(1/r)` rewritten as `b^(1/(r/g))` with `b = a^(1/g)` exact and `g`
/// the largest such divisor of `r`.
fn exact_root(a: &BigUint, r: u64) -> (BigUint, u64) {
    let bits = a.bits();
    let mut divisors: Vec<u64> = (1..=r).take_while(|g| g * g <= r).filter(|g| r % g == 0).flat_map(|g| [g, r / g]).collect();
    divisors.sort_unstable_by(|x, y| y.cmp(x));
    for g in divisors {
        if g == 1 || g > bits {
            continue;
        }
        let b = a.nth_root(g as u32);
        if &b.pow(g as u32) == a {
            return (b, r / g);
        }
    }
    (a.clone(), r)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::invalid(format!("not a rational number: `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize)]
pub enum Verdict {
    BelowStrict,
    Equal,
    AboveStrict,
}

impl Verdict {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Verdict::BelowStrict,
            Ordering::Equal => Verdict::Equal,
            Ordering::Greater => Verdict::AboveStrict,
        }
    }

    pub fn violates(self) -> bool {
        self == Verdict::AboveStrict
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    /// `log2(bound) - log2(count)`; absent when the count is zero.
    pub slack_log2: Option<f64>,
}

/// Compares a count with a bound in exact integer arithmetic.
pub fn compare_exact(count: &BigUint, bound: &RootProductBound) -> Result<Comparison> {
    let verdict = compare_bounds(&RootProductBound::integer(count.clone()), bound)?;
    let slack_log2 = (!count.is_zero()).then(|| bound.log2() - log2_big(count));
    Ok(Comparison { verdict, slack_log2 })
}

/// Position of `a` relative to `b`: `BelowStrict` when `a < b`.
pub fn compare_bounds(a: &RootProductBound, b: &RootProductBound) -> Result<Verdict> {
    if a.scalar.is_zero() || b.scalar.is_zero() {
        return Ok(Verdict::from_ordering(a.scalar.is_zero().cmp(&b.scalar.is_zero()).reverse()));
    }
    let m = lcm(a.root_lcm()?, b.root_lcm()?);
    if m > ROOT_LCM_MAX {
        return Err(Error::CapExceeded {
            what: "common root denominator",
            value: m as usize,
            cap: ROOT_LCM_MAX as usize,
        });
    }
    let (an, ad) = a.raised(m);
    let (bn, bd) = b.raised(m);
    Ok(Verdict::from_ordering((an * bd).cmp(&(bn * ad))))
}

/// A rational as f64.
pub(crate) fn rational_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
