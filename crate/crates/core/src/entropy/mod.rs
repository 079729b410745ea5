//! Entropy of explicit finite distributions.
//!
//! Probabilities are exact: a joint table stores integer numerators over one
//! common denominator. Entropies are f64 (base 2).

mod binomial;
mod checks;
mod format;

pub use binomial::{binomial_half_entropy, binomial_half_entropy_within, chernoff_tail_check, TailCheck, BINOMIAL_ENTROPY_C};
pub use checks::{
    check_all, check_chain_rule, check_conditional_chain_rule, check_conditional_shearer,
    check_conditional_subadditivity, check_dropping, check_dropping_sets, check_shearer,
    check_shearer_given, check_subadditivity, check_surprise_axioms, check_uniform_bound,
    random_family, CoverFamily, PartialOrder, PropertyCheck,
};
pub use format::{parse_joint, read_joint, render_joint, write_joint};

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::ratio_f64;

pub const MAX_ARITY: usize = 16;
/// Bound on the product of coordinate ranges, so tuples index into a u64.
pub const MAX_SPACE: u64 = 1 << 40;
const DENSE_GROUPS: u64 = 1 << 16;

/// A distribution on small integer value ids.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDistribution {
    outcomes: Vec<(u32, BigRational)>,
}

impl FiniteDistribution {
    pub fn new(outcomes: Vec<(u32, BigRational)>) -> Result<Self> {
        let mut ids: Vec<u32> = outcomes.iter().map(|o| o.0).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate value id"));
        }
        if outcomes.iter().any(|(_, p)| p.is_negative()) {
            return Err(Error::invalid("negative probability"));
        }
        let total: BigRational = outcomes.iter().map(|(_, p)| p.clone()).sum();
        if !total.is_one() {
            return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
        }
        Ok(FiniteDistribution { outcomes })
    }

    pub fn uniform(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("uniform distribution needs an outcome"));
        }
        let p = BigRational::new(1.into(), k.into());
        Self::new((0..k).map(|v| (v, p.clone())).collect())
    }

    pub fn bernoulli(p: BigRational) -> Result<Self> {
        let q = BigRational::one() - &p;
        Self::new(vec![(0, q), (1, p)])
    }

    pub fn outcomes(&self) -> &[(u32, BigRational)] {
        &self.outcomes
    }
}

pub fn entropy(d: &FiniteDistribution) -> f64 {
    d.outcomes
        .iter()
        .map(|(_, p)| {
            let num = p.numer().to_biguint().expect("nonnegative");
            let den = p.denom().to_biguint().expect("positive");
            plogp(ratio_f64(&num, &den))
        })
        .sum()
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("binary entropy needs p in [0,1], got {p}")));
    }
    Ok(plogp(p) + plogp(1.0 - p))
}

/// Joint distribution of a random vector `(X_0, .., X_{n-1})` with
/// `X_i` in `0..ranges[i]`. Coordinate sets are bitmasks over `0..n`.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    ranges: Vec<u32>,
    denom: BigUint,
    /// (mixed-radix tuple index, numerator), sorted by index. Zero
    /// numerators are kept.
    cells: Vec<(u64, BigUint)>,
    small: Option<Vec<u128>>,
}

impl PartialEq for JointDistribution {
    fn eq(&self, other: &Self) -> bool {
        self.ranges == other.ranges && self.denom == other.denom && self.cells == other.cells
    }
}

impl Eq for JointDistribution {}

impl JointDistribution {
    /// Build from tuples with exact probabilities. Repeated tuples are
    /// rejected.
    pub fn new(ranges: Vec<u32>, table: Vec<(Vec<u32>, BigRational)>) -> Result<Self> {
        let denom = table
            .iter()
            .fold(BigUint::one(), |acc, (_, p)| acc.lcm(&p.denom().to_biguint().unwrap_or_default()));
        if denom.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        let mut weighted = Vec::with_capacity(table.len());
        for (t, p) in table {
            let num = p
                .numer()
                .to_biguint()
                .ok_or_else(|| Error::invalid("negative probability"))?;
            let scale = &denom / p.denom().to_biguint().expect("positive denominator");
            weighted.push((t, num * scale));
        }
        Self::from_weights(ranges, weighted, denom)
    }

    /// Build from integer weights over a denominator; the weights must sum to
    /// the denominator exactly.
    pub fn from_weights(ranges: Vec<u32>, table: Vec<(Vec<u32>, BigUint)>, denom: BigUint) -> Result<Self> {
        if ranges.len() > MAX_ARITY {
            return Err(Error::CapExceeded {
                what: "arity",
                value: ranges.len(),
                cap: MAX_ARITY,
            });
        }
        if ranges.iter().any(|&r| r == 0) {
            return Err(Error::invalid("every coordinate range must be positive"));
        }
        ranges
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r as u64).filter(|&s| s <= MAX_SPACE))
            .ok_or_else(|| Error::invalid("product of ranges exceeds 2^40"))?;
        let mut cells = Vec::with_capacity(table.len());
        for (t, w) in table {
            if t.len() != ranges.len() {
                return Err(Error::invalid(format!("tuple of length {} in a table of arity {}", t.len(), ranges.len())));
            }
            if let Some(i) = (0..t.len()).find(|&i| t[i] >= ranges[i]) {
                return Err(Error::invalid(format!("value {} outside range {} at coordinate {i}", t[i], ranges[i])));
            }
            cells.push((encode(&ranges, &t), w));
        }
        cells.sort_by_key(|c| c.0);
        if cells.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("repeated tuple"));
        }
        let total: BigUint = cells.iter().map(|c| &c.1).sum();
        if total != denom {
            return Err(Error::invalid("probabilities do not sum to 1"));
        }
        Ok(Self::normalized(ranges, cells, denom))
    }

    fn normalized(ranges: Vec<u32>, mut cells: Vec<(u64, BigUint)>, mut denom: BigUint) -> Self {
        let g = cells.iter().fold(denom.clone(), |g, c| g.gcd(&c.1));
        if !g.is_one() {
            denom /= &g;
            for c in &mut cells {
                c.1 /= &g;
            }
        }
        let small = if denom.bits() < 127 {
            Some(cells.iter().map(|c| c.1.to_u128().expect("below denominator")).collect())
        } else {
            None
        };
        JointDistribution {
            ranges,
            denom,
            cells,
            small,
        }
    }

    /// Uniform over the whole product space.
    pub fn uniform(ranges: Vec<u32>) -> Result<Self> {
        let space: u64 = ranges.iter().map(|&r| r as u64).product();
        let tuples = (0..space).map(|i| (decode(&ranges, i), BigUint::one())).collect();
        Self::from_weights(ranges, tuples, BigUint::from(space))
    }

    /// Independent coordinates with the given marginals.
    pub fn product(factors: &[FiniteDistribution]) -> Result<Self> {
        let ranges: Vec<u32> = factors
            .iter()
            .map(|f| f.outcomes.iter().map(|o| o.0 + 1).max().unwrap_or(1))
            .collect();
        let mut table: Vec<(Vec<u32>, BigRational)> = vec![(Vec::new(), BigRational::one())];
        for f in factors {
            let mut next = Vec::new();
            for (t, p) in &table {
                for (v, q) in &f.outcomes {
                    let mut t2 = t.clone();
                    t2.push(*v);
                    next.push((t2, p * q));
                }
            }
            table = next;
        }
        Self::new(ranges, table)
    }

    pub fn arity(&self) -> usize {
        self.ranges.len()
    }

    pub fn ranges(&self) -> &[u32] {
        &self.ranges
    }

    pub fn all(&self) -> u32 {
        ((1u64 << self.arity()) - 1) as u32
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denom
    }

    /// Tuples with their exact probabilities, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<u32>, BigRational)> + '_ {
        let d = num_bigint::BigInt::from(self.denom.clone());
        self.cells.iter().map(move |(i, w)| {
            (
                decode(&self.ranges, *i),
                BigRational::new(num_bigint::BigInt::from(w.clone()), d.clone()),
            )
        })
    }

    pub fn probability(&self, tuple: &[u32]) -> BigRational {
        if tuple.len() != self.arity() || (0..tuple.len()).any(|i| tuple[i] >= self.ranges[i]) {
            return BigRational::zero();
        }
        let idx = encode(&self.ranges, tuple);
        match self.cells.binary_search_by_key(&idx, |c| c.0) {
            Ok(pos) => BigRational::new(self.cells[pos].1.clone().into(), self.denom.clone().into()),
            Err(_) => BigRational::zero(),
        }
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if self.arity() < 32 && mask >> self.arity() != 0 {
            return Err(Error::invalid(format!("coordinate set {mask:#b} exceeds arity {}", self.arity())));
        }
        Ok(())
    }

    /// Exact marginal on the coordinates in `mask`, kept in increasing
    /// coordinate order. The empty set gives the one-outcome distribution.
    pub fn marginal(&self, mask: u32) -> Result<Self> {
        self.check_mask(mask)?;
        let coords = coords_of(mask);
        let ranges: Vec<u32> = coords.iter().map(|&c| self.ranges[c]).collect();
        let mut sums: Vec<(u64, BigUint)> = Vec::new();
        let mut index: HashMap<u64, usize> = HashMap::new();
        let proj = Projector::new(&self.ranges, mask);
        for (i, w) in &self.cells {
            let key = proj.key(*i);
            match index.get(&key) {
                Some(&pos) => sums[pos].1 += w,
                None => {
                    index.insert(key, sums.len());
                    sums.push((key, w.clone()));
                }
            }
        }
        sums.sort_by_key(|c| c.0);
        Ok(Self::normalized(ranges, sums, self.denom.clone()))
    }

    /// H(X_S) for the coordinate set `mask`.
    pub fn entropy_of(&self, mask: u32) -> Result<f64> {
        self.check_mask(mask)?;
        let proj = Projector::new(&self.ranges, mask);
        Ok(match &self.small {
            Some(w) => {
                let d = self.denom.to_f64().expect("small denominator");
                group_u128(&self.cells, w, &proj)
                    .into_iter()
                    .map(|s| plogp(s as f64 / d))
                    .sum()
            }
            None => group_big(&self.cells, &proj)
                .into_values()
                .map(|s| plogp(ratio_f64(&s, &self.denom)))
                .sum(),
        })
    }

    /// H(X) of the whole vector.
    pub fn entropy(&self) -> f64 {
        self.entropy_of(self.all()).expect("full mask")
    }

    /// H(X_A | X_B) by the expectation formula
    /// `sum_y p(y) sum_x -p(x|y) log p(x|y)`. Outcomes `y` of probability zero
    /// contribute nothing.
    pub fn conditional_entropy(&self, a: u32, b: u32) -> Result<f64> {
        self.check_mask(a)?;
        self.check_mask(b)?;
        if a & b != 0 {
            return Err(Error::invalid("conditioning set overlaps the target set"));
        }
        let pb = Projector::new(&self.ranges, b);
        let pab = Projector::new(&self.ranges, a | b);
        let total = match &self.small {
            Some(w) => {
                let d = self.denom.to_f64().expect("small denominator");
                let by_b = group_u128_map(&self.cells, w, &pb);
                let by_ab = group_u128_map(&self.cells, w, &pab);
                let mut h = 0.0;
                for (key, s) in by_ab {
                    if s == 0 {
                        continue;
                    }
                    let y = by_b[&pb.key(pab.sample(key))];
                    h += (s as f64 / d) * -(s as f64 / y as f64).log2();
                }
                h
            }
            None => {
                let by_b = group_big(&self.cells, &pb);
                let by_ab = group_big(&self.cells, &pab);
                let mut h = 0.0;
                for (key, s) in by_ab {
                    if s.is_zero() {
                        continue;
                    }
                    let y = &by_b[&pb.key(pab.sample(key))];
                    h += ratio_f64(&s, &self.denom) * -ratio_f64(&s, y).log2();
                }
                h
            }
        };
        Ok(total)
    }

    /// Number of tuples of positive probability.
    pub fn support_size(&self) -> usize {
        self.cells.iter().filter(|c| !c.1.is_zero()).count()
    }

    /// The distribution conditioned on `X_S = values`, over the remaining
    /// coordinates; `None` if the event has probability zero.
    pub fn condition_on(&self, mask: u32, values: &[u32]) -> Result<Option<Self>> {
        self.check_mask(mask)?;
        let coords = coords_of(mask);
        if coords.len() != values.len() {
            return Err(Error::invalid("one value per conditioned coordinate"));
        }
        let rest = self.all() & !mask;
        let keep = coords_of(rest);
        let mut table = Vec::new();
        let mut total = BigUint::zero();
        for (i, w) in &self.cells {
            let t = decode(&self.ranges, *i);
            if coords.iter().zip(values).all(|(&c, &v)| t[c] == v) {
                total += w;
                table.push((keep.iter().map(|&c| t[c]).collect(), w.clone()));
            }
        }
        if total.is_zero() {
            return Ok(None);
        }
        let ranges = keep.iter().map(|&c| self.ranges[c]).collect();
        Self::from_weights(ranges, table, total).map(Some)
    }
}

/// Seeded random joint distribution with small integer weights (some zero).
pub fn random_joint<R: Rng>(rng: &mut R, arity: usize, max_range: u32) -> JointDistribution {
    loop {
        let ranges: Vec<u32> = (0..arity).map(|_| rng.gen_range(1..=max_range)).collect();
        let space: u64 = ranges.iter().map(|&r| r as u64).product();
        let mut table = Vec::new();
        let mut total = 0u64;
        for i in 0..space {
            let w: u64 = if rng.gen_bool(0.25) { 0 } else { rng.gen_range(1..=12) };
            total += w;
            table.push((decode(&ranges, i), BigUint::from(w)));
        }
        if total > 0 {
            return JointDistribution::from_weights(ranges, table, BigUint::from(total)).expect("valid by construction");
        }
    }
}

pub(crate) fn coords_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Coordinate 0 is the most significant digit, so index order is
/// lexicographic tuple order.
fn encode(ranges: &[u32], t: &[u32]) -> u64 {
    ranges.iter().zip(t).fold(0u64, |acc, (&r, &v)| acc * r as u64 + v as u64)
}

fn decode(ranges: &[u32], mut idx: u64) -> Vec<u32> {
    let mut t = vec![0u32; ranges.len()];
    for i in (0..ranges.len()).rev() {
        t[i] = (idx % ranges[i] as u64) as u32;
        idx /= ranges[i] as u64;
    }
    t
}

/// Maps a full tuple index to the mixed-radix index of its projection.
struct Projector {
    /// (divisor into the full index, range, multiplier in the key)
    digits: Vec<(u64, u64, u64)>,
    space: u64,
}

impl Projector {
    fn new(ranges: &[u32], mask: u32) -> Self {
        let mut place = vec![0u64; ranges.len()];
        let mut p = 1u64;
        for i in (0..ranges.len()).rev() {
            place[i] = p;
            p *= ranges[i] as u64;
        }
        let mut digits = Vec::new();
        let mut mult = 1u64;
        for i in (0..ranges.len()).rev() {
            if mask >> i & 1 == 1 {
                digits.push((place[i], ranges[i] as u64, mult));
                mult *= ranges[i] as u64;
            }
        }
        Projector { digits, space: mult }
    }

    fn key(&self, idx: u64) -> u64 {
        self.digits
            .iter()
            .fold(0, |acc, &(div, r, mult)| acc + (idx / div % r) * mult)
    }

    /// A full index whose projection is `key`, with the other coordinates 0.
    fn sample(&self, key: u64) -> u64 {
        self.digits
            .iter()
            .fold(0, |acc, &(div, r, mult)| acc + (key / mult % r) * div)
    }
}

fn group_u128(cells: &[(u64, BigUint)], w: &[u128], proj: &Projector) -> Vec<u128> {
    if proj.space <= DENSE_GROUPS {
        let mut sums = vec![0u128; proj.space as usize];
        for (c, &x) in cells.iter().zip(w) {
            sums[proj.key(c.0) as usize] += x;
        }
        sums
    } else {
        group_u128_map(cells, w, proj).into_values().collect()
    }
}

fn group_u128_map(cells: &[(u64, BigUint)], w: &[u128], proj: &Projector) -> HashMap<u64, u128> {
    let mut sums = HashMap::new();
    for (c, &x) in cells.iter().zip(w) {
        *sums.entry(proj.key(c.0)).or_insert(0) += x;
    }
    sums
}

fn group_big(cells: &[(u64, BigUint)], proj: &Projector) -> HashMap<u64, BigUint> {
    let mut sums: HashMap<u64, BigUint> = HashMap::new();
    for (i, w) in cells {
        *sums.entry(proj.key(*i)).or_default() += w;
    }
    sums
}
