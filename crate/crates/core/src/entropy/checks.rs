//! Numeric checks of the entropy identities and inequalities on explicit
//! distributions.
//!
//! Equalities pass when `|lhs - rhs| <= tol`. Inequalities `lhs <= rhs` pass
//! when `lhs - rhs <= tol`; the slack is only ever granted on the violating
//! side.

use rand::Rng;
use serde::Serialize;

use super::{coords_of, JointDistribution};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub property: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs|` for equalities, `lhs - rhs` for inequalities.
    pub deviation: f64,
    pub tol: f64,
    pub holds: bool,
}

impl PropertyCheck {
    fn equality(property: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let deviation = (lhs - rhs).abs();
        PropertyCheck {
            property: property.into(),
            lhs,
            rhs,
            deviation,
            tol,
            holds: deviation <= tol,
        }
    }

    fn at_most(property: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let deviation = lhs - rhs;
        PropertyCheck {
            property: property.into(),
            lhs,
            rhs,
            deviation,
            tol,
            holds: deviation <= tol,
        }
    }

    fn worst(checks: impl IntoIterator<Item = PropertyCheck>) -> Option<PropertyCheck> {
        checks
            .into_iter()
            .reduce(|a, b| if b.deviation > a.deviation { b } else { a })
    }
}

/// A multiset of coordinate sets. The depth is the least number of members
/// containing a coordinate, recomputed from the members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFamily {
    n: usize,
    members: Vec<u32>,
}

impl CoverFamily {
    pub fn new(n: usize, members: Vec<u32>) -> Result<Self> {
        if n > 32 {
            return Err(Error::invalid("cover families are limited to 32 coordinates"));
        }
        let full = full32(n);
        if let Some(m) = members.iter().find(|&&m| m & !full != 0) {
            return Err(Error::invalid(format!("member {m:#b} is not a subset of the ground set")));
        }
        Ok(CoverFamily { n, members })
    }

    pub fn singletons(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| 1u32 << i).collect())
    }

    /// All `k`-subsets of the ground set.
    pub fn k_subsets(n: usize, k: usize) -> Result<Self> {
        let members = (0..1u64 << n)
            .map(|m| m as u32)
            .filter(|m| m.count_ones() as usize == k)
            .collect();
        Self::new(n, members)
    }

    /// The `n` sets missing one coordinate each.
    pub fn han(n: usize) -> Result<Self> {
        let full = full32(n);
        Self::new(n, (0..n).map(|i| full & !(1u32 << i)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn depth(&self) -> usize {
        self.depth_over(full32(self.n))
    }

    /// Least coverage over the coordinates in `mask`.
    pub fn depth_over(&self, mask: u32) -> usize {
        coords_of(mask)
            .into_iter()
            .map(|i| self.members.iter().filter(|&&m| m >> i & 1 == 1).count())
            .min()
            .unwrap_or(0)
    }
}

/// A strict partial order on `0..n`, stored transitively closed:
/// `below[j]` holds every `i` with `i < j` in the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrder {
    n: usize,
    below: Vec<u32>,
}

impl PartialOrder {
    /// Transitive closure of the pairs `(i, j)` meaning `i` precedes `j`.
    /// Fails if the closure is not irreflexive.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n > 32 {
            return Err(Error::invalid("orders are limited to 32 elements"));
        }
        let mut below = vec![0u32; n];
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::invalid(format!("pair ({i},{j}) outside 0..{n}")));
            }
            below[j] |= 1 << i;
        }
        for k in 0..n {
            for j in 0..n {
                if below[j] >> k & 1 == 1 {
                    below[j] |= below[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| below[i] >> i & 1 == 1) {
            return Err(Error::invalid(format!("relation is cyclic through {i}")));
        }
        Ok(PartialOrder { n, below })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    /// `0 < 1 < .. < n-1`.
    pub fn total(n: usize) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (1..n).map(|j| (j - 1, j)).collect();
        Self::new(n, &pairs)
    }

    /// A random order: pairs oriented along a random permutation.
    pub fn random<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Self> {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(density) {
                    pairs.push((perm[a], perm[b]));
                }
            }
        }
        Self::new(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.below[j] >> i & 1 == 1
    }

    /// `{ i : i precedes every member of F }`.
    pub fn below_set(&self, f: u32) -> u32 {
        coords_of(f)
            .into_iter()
            .fold(full32(self.n), |acc, x| acc & self.below[x])
    }
}

fn full32(n: usize) -> u32 {
    ((1u64 << n) - 1) as u32
}

fn hc(j: &JointDistribution, a: u32, b: u32) -> f64 {
    j.conditional_entropy(a, b).expect("disjoint masks within arity")
}

/// `H(X_0..X_{n-1}) = sum_i H(X_i | X_0..X_{i-1})`.
pub fn check_chain_rule(j: &JointDistribution, tol: f64) -> PropertyCheck {
    check_conditional_chain_rule(j, j.all(), 0, tol).expect("valid masks")
}

/// `H(X_S | Z) = sum_{i in S} H(X_i | X_{earlier in S}, Z)`.
pub fn check_conditional_chain_rule(j: &JointDistribution, xs: u32, z: u32, tol: f64) -> Result<PropertyCheck> {
    disjoint(j, xs, z)?;
    let lhs = hc(j, xs, z);
    let mut earlier = 0u32;
    let mut rhs = 0.0;
    for i in coords_of(xs) {
        rhs += hc(j, 1 << i, earlier | z);
        earlier |= 1 << i;
    }
    Ok(PropertyCheck::equality(label("chain rule", xs, z), lhs, rhs, tol))
}

/// `H(X) <= sum_i H(X_i)`.
pub fn check_subadditivity(j: &JointDistribution, tol: f64) -> PropertyCheck {
    check_conditional_subadditivity(j, j.all(), 0, tol).expect("valid masks")
}

/// `H(X_S | Z) <= sum_{i in S} H(X_i | Z)`.
pub fn check_conditional_subadditivity(j: &JointDistribution, xs: u32, z: u32, tol: f64) -> Result<PropertyCheck> {
    disjoint(j, xs, z)?;
    let lhs = hc(j, xs, z);
    let rhs = coords_of(xs).into_iter().map(|i| hc(j, 1 << i, z)).sum();
    Ok(PropertyCheck::at_most(label("subadditivity", xs, z), lhs, rhs, tol))
}

/// `H(X | Y, Z) <= H(X | Y)`; with `y = 0` this is `H(X | Z) <= H(X)`.
pub fn check_dropping_sets(j: &JointDistribution, x: u32, y: u32, z: u32, tol: f64) -> Result<PropertyCheck> {
    disjoint(j, x, y | z)?;
    if y & z != 0 {
        return Err(Error::invalid("conditioning sets overlap"));
    }
    let lhs = hc(j, x, y | z);
    let rhs = hc(j, x, y);
    Ok(PropertyCheck::at_most(
        format!("dropping conditioning x={x:#b} y={y:#b} z={z:#b}"),
        lhs,
        rhs,
        tol,
    ))
}

/// Dropping conditioning over every single coordinate `x` and distinct
/// `y`, `z`: both `H(X_x | X_z) <= H(X_x)` and
/// `H(X_x | X_y, X_z) <= H(X_x | X_y)`. Reports the worst instance.
pub fn check_dropping(j: &JointDistribution, tol: f64) -> PropertyCheck {
    let n = j.arity();
    let mut all = Vec::new();
    for x in 0..n {
        for z in (0..n).filter(|&z| z != x) {
            all.push(check_dropping_sets(j, 1 << x, 0, 1 << z, tol).expect("valid"));
            for y in (0..n).filter(|&y| y != x && y != z) {
                all.push(check_dropping_sets(j, 1 << x, 1 << y, 1 << z, tol).expect("valid"));
            }
        }
    }
    PropertyCheck::worst(all).unwrap_or_else(|| PropertyCheck::at_most("dropping conditioning", 0.0, 0.0, tol))
}

/// `H(X) <= log |support|`, and the same for the remaining coordinates
/// conditioned on each event `X_k = v` of positive probability.
pub fn check_uniform_bound(j: &JointDistribution, tol: f64) -> PropertyCheck {
    let mut all = vec![PropertyCheck::at_most(
        "maximality of the uniform",
        j.entropy(),
        (j.support_size() as f64).log2(),
        tol,
    )];
    if j.arity() >= 2 {
        for k in 0..j.arity() {
            for v in 0..j.ranges()[k] {
                if let Some(c) = j.condition_on(1 << k, &[v]).expect("valid coordinate") {
                    all.push(PropertyCheck::at_most(
                        format!("conditional maximality of the uniform given x{k}={v}"),
                        c.entropy(),
                        (c.support_size() as f64).log2(),
                        tol,
                    ));
                }
            }
        }
    }
    PropertyCheck::worst(all).expect("non-empty")
}

/// `H(X) <= (1/t) sum_F H(X_F)`.
pub fn check_shearer(j: &JointDistribution, f: &CoverFamily, tol: f64) -> Result<PropertyCheck> {
    check_shearer_given(j, f, 0, tol)
}

/// `H(X_S | Z) <= (1/t) sum_F H(X_F | Z)` where `S` is every coordinate
/// outside `z`, members avoid `z`, and `t` is the least coverage on `S`.
pub fn check_shearer_given(j: &JointDistribution, f: &CoverFamily, z: u32, tol: f64) -> Result<PropertyCheck> {
    same_ground(j, f.n())?;
    if f.members().iter().any(|&m| m & z != 0) {
        return Err(Error::invalid("family members must avoid the conditioning set"));
    }
    let xs = j.all() & !z;
    let t = f.depth_over(xs);
    if t == 0 {
        return Err(Error::invalid("cover family has depth 0"));
    }
    let lhs = hc(j, xs, z);
    let rhs = f.members().iter().map(|&m| hc(j, m, z)).sum::<f64>() / t as f64;
    Ok(PropertyCheck::at_most(format!("shearer t={t} given {z:#b}"), lhs, rhs, tol))
}

/// `H(X) <= (1/t) sum_F H(X_F | {X_i : i precedes every member of F})`.
pub fn check_conditional_shearer(
    j: &JointDistribution,
    f: &CoverFamily,
    ord: &PartialOrder,
    tol: f64,
) -> Result<PropertyCheck> {
    same_ground(j, f.n())?;
    same_ground(j, ord.n())?;
    let t = f.depth();
    if t == 0 {
        return Err(Error::invalid("cover family has depth 0"));
    }
    let lhs = j.entropy();
    let rhs = f
        .members()
        .iter()
        .map(|&m| if m == 0 { 0.0 } else { hc(j, m, ord.below_set(m)) })
        .sum::<f64>()
        / t as f64;
    Ok(PropertyCheck::at_most(format!("conditional shearer t={t}"), lhs, rhs, tol))
}

/// The surprise function `S(p) = -log2 p` against its axioms on a sample:
/// `S(1) = 0`, `S(1/2) = 1`, strictly decreasing, and `S(pq) = S(p) + S(q)`
/// for every pair. Reports the worst deviation.
pub fn check_surprise_axioms(sample: &[f64], tol: f64) -> Result<PropertyCheck> {
    if let Some(p) = sample.iter().find(|&&p| !(p > 0.0 && p <= 1.0)) {
        return Err(Error::invalid(format!("surprise sample value {p} outside (0,1]")));
    }
    let s = |p: f64| -p.log2();
    let mut all = vec![
        PropertyCheck::equality("S(1) = 0", s(1.0), 0.0, tol),
        PropertyCheck::equality("S(1/2) = 1", s(0.5), 1.0, tol),
    ];
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    for w in sorted.windows(2) {
        if w[0] < w[1] {
            // S(p) > S(q) for p < q; deviation positive when violated
            let c = PropertyCheck::at_most(format!("monotone at {} < {}", w[0], w[1]), s(w[1]), s(w[0]), 0.0);
            all.push(PropertyCheck {
                holds: s(w[0]) > s(w[1]),
                ..c
            });
        }
    }
    for (a, &p) in sample.iter().enumerate() {
        for &q in &sample[a..] {
            all.push(PropertyCheck::equality(format!("S({p}*{q})"), s(p * q), s(p) + s(q), tol));
        }
    }
    let holds = all.iter().all(|c| c.holds);
    let mut worst = PropertyCheck::worst(all).expect("non-empty");
    worst.holds = holds;
    Ok(worst)
}

/// The whole suite on one distribution, with a seeded random cover family
/// and partial order.
pub fn check_all<R: Rng>(j: &JointDistribution, rng: &mut R, tol: f64) -> Vec<PropertyCheck> {
    let n = j.arity();
    let mut out = vec![
        check_chain_rule(j, tol),
        check_subadditivity(j, tol),
        check_dropping(j, tol),
        check_uniform_bound(j, tol),
    ];
    if n == 0 {
        return out;
    }
    let last = 1u32 << (n - 1);
    if n >= 2 {
        let xs = j.all() & !last;
        out.push(check_conditional_chain_rule(j, xs, last, tol).expect("valid"));
        out.push(check_conditional_subadditivity(j, xs, last, tol).expect("valid"));
        let given = CoverFamily::singletons(n)
            .map(|f| CoverFamily::new(n, f.members().iter().copied().filter(|&m| m != last).collect()))
            .expect("valid")
            .expect("valid");
        out.push(check_shearer_given(j, &given, last, tol).expect("depth 1"));
    }
    let mut families = vec![CoverFamily::singletons(n).expect("valid"), CoverFamily::han(n).expect("valid")];
    if n >= 2 {
        families.push(CoverFamily::k_subsets(n, 2).expect("valid"));
    }
    families.push(random_family(rng, n));
    for f in &families {
        if f.depth() > 0 {
            out.push(check_shearer(j, f, tol).expect("depth checked"));
        }
    }
    let orders = [
        PartialOrder::empty(n).expect("valid"),
        PartialOrder::total(n).expect("valid"),
        PartialOrder::random(rng, n, 0.5).expect("valid"),
    ];
    for ord in &orders {
        for f in &families {
            if f.depth() > 0 {
                out.push(check_conditional_shearer(j, f, ord, tol).expect("depth checked"));
            }
        }
    }
    out
}

/// Random members until every coordinate is covered at least once.
pub fn random_family<R: Rng>(rng: &mut R, n: usize) -> CoverFamily {
    let mut members = Vec::new();
    let full = full32(n);
    let mut covered = 0u32;
    while covered != full || members.len() < 2 {
        let m = rng.gen_range(0..=full);
        covered |= m;
        members.push(m);
    }
    CoverFamily::new(n, members).expect("members within ground set")
}

fn disjoint(j: &JointDistribution, a: u32, b: u32) -> Result<()> {
    if a & b != 0 {
        return Err(Error::invalid("target and conditioning sets overlap"));
    }
    if (a | b) & !j.all() != 0 {
        return Err(Error::invalid("coordinate set exceeds arity"));
    }
    Ok(())
}

fn same_ground(j: &JointDistribution, n: usize) -> Result<()> {
    if n != j.arity() {
        return Err(Error::invalid(format!("ground size {n} differs from arity {}", j.arity())));
    }
    Ok(())
}

fn label(name: &str, xs: u32, z: u32) -> String {
    if z == 0 {
        format!("{name} on {xs:#b}")
    } else {
        format!("{name} on {xs:#b} given {z:#b}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::random_joint;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-9;

    fn correlated_pair() -> JointDistribution {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        JointDistribution::new(vec![2, 2], vec![(vec![0, 0], half.clone()), (vec![1, 1], half)]).unwrap()
    }

    #[test]
    fn chain_rule_examples() {
        let u = JointDistribution::uniform(vec![2, 2, 2]).unwrap();
        let c = check_chain_rule(&u, TOL);
        assert!(c.holds);
        assert!((c.lhs - 3.0).abs() < 1e-12 && (c.rhs - 3.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let j = random_joint(&mut rng, 3, 3);
        assert!(check_chain_rule(&j, TOL).deviation <= 1e-9);
    }

    #[test]
    fn subadditivity_examples() {
        let c = check_subadditivity(&correlated_pair(), TOL);
        assert!(c.holds);
        assert!((c.lhs - 1.0).abs() < 1e-12 && (c.rhs - 2.0).abs() < 1e-12);
        let u = JointDistribution::uniform(vec![3, 2]).unwrap();
        assert!(check_subadditivity(&u, TOL).deviation.abs() < 1e-12);
        assert!(check_dropping(&u, TOL).holds);
    }

    #[test]
    fn shearer_examples() {
        let u = JointDistribution::uniform(vec![2, 2, 2]).unwrap();
        let pairs = CoverFamily::k_subsets(3, 2).unwrap();
        assert_eq!(pairs.depth(), 2);
        let c = check_shearer(&u, &pairs, TOL).unwrap();
        assert!(c.holds && c.deviation.abs() < 1e-12);
        let j = correlated_pair();
        let s = check_shearer(&j, &CoverFamily::singletons(2).unwrap(), TOL).unwrap();
        let sub = check_subadditivity(&j, TOL);
        assert_eq!((s.lhs, s.rhs), (sub.lhs, sub.rhs));
        let thin = CoverFamily::new(3, vec![0b011]).unwrap();
        assert!(check_shearer(&u, &thin, TOL).is_err());
        assert!(check_shearer(&j, &pairs, TOL).is_err());
    }

    #[test]
    fn conditional_shearer_reductions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let j = random_joint(&mut rng, 4, 3);
        let han = CoverFamily::han(4).unwrap();
        let plain = check_shearer(&j, &han, TOL).unwrap();
        let cond = check_conditional_shearer(&j, &han, &PartialOrder::empty(4).unwrap(), TOL).unwrap();
        assert!((plain.rhs - cond.rhs).abs() < 1e-12);
        let singles = CoverFamily::singletons(4).unwrap();
        let chain = check_conditional_shearer(&j, &singles, &PartialOrder::total(4).unwrap(), TOL).unwrap();
        assert!((chain.lhs - chain.rhs).abs() < 1e-9);
    }

    #[test]
    fn partial_orders() {
        let o = PartialOrder::new(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(o.precedes(0, 2));
        assert!(!o.precedes(2, 0) && !o.precedes(3, 0));
        assert_eq!(o.below_set(0b0110), 0b0001);
        assert!(PartialOrder::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(PartialOrder::new(3, &[(1, 1)]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let r = PartialOrder::random(&mut rng, 5, 0.5).unwrap();
            assert!((0..5).all(|i| !r.precedes(i, i)));
        }
    }

    #[test]
    fn surprise_axioms() {
        assert!(check_surprise_axioms(&[1.0, 0.5, 0.25], 1e-12).unwrap().holds);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let sample: Vec<f64> = (0..50).map(|_| rng.gen_range(1e-6..=1.0)).collect();
        assert!(check_surprise_axioms(&sample, 1e-12).unwrap().holds);
        assert!(check_surprise_axioms(&[0.0], 1e-12).is_err());
        assert!(check_surprise_axioms(&[1.5], 1e-12).is_err());
    }

    #[test]
    fn suite_has_no_violations_on_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let arity = rng.gen_range(1..=4);
            let j = random_joint(&mut rng, arity, 4);
            for c in check_all(&j, &mut rng, TOL) {
                assert!(c.holds, "{c:?}");
            }
        }
    }

    #[test]
    fn an_inverted_inequality_is_caught() {
        // H(X) <= H(X1) + H(X2) read backwards must fail on a correlated pair
        let c = check_subadditivity(&correlated_pair(), TOL);
        let inverted = PropertyCheck::at_most("inverted", c.rhs, c.lhs, TOL);
        assert!(!inverted.holds);
    }
}
