//! Matchings by branching on the lowest unmatched vertex, memoised on the set
//! of remaining vertices. Components are counted separately and combined.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::convolve;
use crate::error::{check_cap, Error, Result};
use crate::graph::{bits, Graph};

/// Largest connected component the matching counters accept.
pub const MATCHING_MAX_COMPONENT: usize = 28;

fn loop_free(g: &Graph) -> Result<()> {
    if g.has_loops() {
        return Err(Error::invalid("matchings are defined on loop-free graphs"));
    }
    for c in g.components() {
        check_cap("component size for matching counts", c.count_ones() as usize, MATCHING_MAX_COMPONENT)?;
    }
    Ok(())
}

pub fn perfect_matchings(g: &Graph) -> Result<BigUint> {
    loop_free(g)?;
    let mut total = BigUint::from(1u32);
    for comp in g.components() {
        if comp.count_ones() % 2 == 1 {
            return Ok(BigUint::default());
        }
        let mut memo = HashMap::new();
        total *= perfect_in(g, comp, &mut memo);
    }
    Ok(total)
}

fn perfect_in(g: &Graph, mask: u64, memo: &mut HashMap<u64, u128>) -> u128 {
    if mask == 0 {
        return 1;
    }
    if let Some(&c) = memo.get(&mask) {
        return c;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let c = bits(g.neighbors(v) & rest)
        .map(|u| perfect_in(g, rest & !(1 << u), memo))
        .sum();
    memo.insert(mask, c);
    c
}

/// Coefficient `t` is the number of matchings with `t` edges.
pub fn matching_polynomial(g: &Graph) -> Result<Vec<BigUint>> {
    loop_free(g)?;
    let mut poly = vec![BigUint::from(1u32)];
    for comp in g.components() {
        let mut memo = HashMap::new();
        let p: Vec<BigUint> = poly_in(g, comp, &mut memo).iter().map(|&c| BigUint::from(c)).collect();
        poly = convolve(&poly, &p);
    }
    Ok(poly)
}

fn poly_in(g: &Graph, mask: u64, memo: &mut HashMap<u64, Vec<u128>>) -> Vec<u128> {
    if mask == 0 {
        return vec![1];
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut p = poly_in(g, rest, memo);
    for u in bits(g.neighbors(v) & rest) {
        let q = poly_in(g, rest & !(1 << u), memo);
        if p.len() < q.len() + 1 {
            p.resize(q.len() + 1, 0);
        }
        for (t, c) in q.iter().enumerate() {
            p[t + 1] += c;
        }
    }
    memo.insert(mask, p.clone());
    p
}

pub fn matchings_of_size(g: &Graph, t: usize) -> Result<BigUint> {
    Ok(matching_polynomial(g)?.into_iter().nth(t).unwrap_or_default())
}

pub fn matchings_total(g: &Graph) -> Result<BigUint> {
    Ok(matching_polynomial(g)?.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, knd, path};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Count edge subsets of each size that are matchings.
    fn oracle(g: &Graph) -> Vec<u64> {
        let edges = g.edges();
        let mut out = vec![0u64; g.n() / 2 + 1];
        for s in 0u64..1 << edges.len() {
            let mut used = 0u64;
            let mut ok = true;
            for i in bits(s) {
                let (a, b) = edges[i];
                if used >> a & 1 == 1 || used >> b & 1 == 1 {
                    ok = false;
                    break;
                }
                used |= 1 << a | 1 << b;
            }
            if ok {
                out[s.count_ones() as usize] += 1;
            }
        }
        out
    }

    #[test]
    fn examples() {
        assert_eq!(perfect_matchings(&complete(5).unwrap()).unwrap(), 0u32.into());
        assert_eq!(perfect_matchings(&knd(4, 2).unwrap()).unwrap(), 4u32.into());
        assert_eq!(perfect_matchings(&complete(4).unwrap()).unwrap(), 3u32.into());
        let k33 = complete_bipartite(3).unwrap();
        assert_eq!(matchings_of_size(&k33, 0).unwrap(), 1u32.into());
        assert_eq!(matchings_of_size(&k33, 1).unwrap(), 9u32.into());
        assert_eq!(matchings_of_size(&k33, 2).unwrap(), 18u32.into());
        assert_eq!(matchings_of_size(&k33, 4).unwrap(), 0u32.into());
        assert!(perfect_matchings(&crate::graph::h_ind()).is_err());
    }

    #[test]
    fn matches_edge_subset_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut graphs = vec![cycle(7).unwrap(), path(6).unwrap(), complete(6).unwrap()];
        for _ in 0..60 {
            let n = rng.gen_range(1..=8);
            let mut g = Graph::new(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            graphs.push(g);
        }
        for g in graphs {
            let want = oracle(&g);
            let poly = matching_polynomial(&g).unwrap();
            for (t, w) in want.iter().enumerate() {
                let got = poly.get(t).cloned().unwrap_or_default();
                assert_eq!(got, BigUint::from(*w));
            }
            assert_eq!(matchings_total(&g).unwrap(), BigUint::from(want.iter().sum::<u64>()));
            if g.n() % 2 == 0 {
                assert_eq!(perfect_matchings(&g).unwrap(), BigUint::from(want[g.n() / 2]));
            }
        }
    }

    #[test]
    fn large_disjoint_union() {
        // K(24,4): six copies of K_{4,4}, each with 4! perfect matchings
        let g = knd(24, 4).unwrap();
        assert_eq!(perfect_matchings(&g).unwrap(), BigUint::from(24u32).pow(6));
    }
}
