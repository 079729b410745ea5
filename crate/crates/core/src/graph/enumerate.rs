//! Isomorph-free enumeration.
//!
//! Regular graphs are built one vertex at a time: at step `k` vertex `k`
//! receives all of its remaining neighbours among the later vertices. After
//! each step the partial graphs are reduced to one representative per
//! isomorphism class. Every representative at step `k` has vertices `0..=k`
//! saturated, and its set of regular completions depends only on its
//! isomorphism class, so the reduction loses nothing.

use std::collections::BTreeMap;

use super::{bits, canonical_form, canonical_form_colored, full_mask, Graph};
use crate::error::{check_cap, Error, Result};

pub const REGULAR_MAX_N: usize = 10;
pub const BIPARTITE_MAX_HALF_N: usize = 7;
pub const ALL_GRAPHS_MAX_N: usize = 8;

/// One representative of every isomorphism class of `d`-regular simple graphs
/// on `n` vertices, in canonical-form order.
pub fn enumerate_regular(n: usize, d: usize) -> Result<Vec<Graph>> {
    check_cap("n for regular enumeration", n, REGULAR_MAX_N)?;
    if n * d % 2 != 0 {
        return Err(Error::invalid(format!(
            "no {d}-regular graph on {n} vertices: n*d is odd"
        )));
    }
    if n > 0 && d >= n {
        return Ok(Vec::new());
    }
    let mut states = vec![Graph::new(n)?];
    for k in 0..n {
        let mut next: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
        for g in &states {
            let need = d - g.degree(k);
            let open: u64 = (k + 1..n)
                .filter(|&w| g.degree(w) < d)
                .fold(0, |m, w| m | 1 << w);
            for choice in subsets_of_size(open, need) {
                let mut h = g.clone();
                for w in bits(choice) {
                    h.add_edge(k, w)?;
                }
                if completable(&h, d, k + 1) {
                    next.entry(canonical_form(&h)?).or_insert(h);
                }
            }
        }
        states = next.into_values().collect();
    }
    finish(states)
}

/// One representative per isomorphism class of `d`-regular bipartite graphs
/// with both classes of size `half_n`. Vertices `0..half_n` form the left
/// class, recorded as the bipartition. Classes are taken up to graph
/// isomorphism, which subsumes row and column permutations of the
/// biadjacency matrix and swapping the two classes.
pub fn enumerate_bipartite_regular(half_n: usize, d: usize) -> Result<Vec<Graph>> {
    check_cap("half_n for bipartite enumeration", half_n, BIPARTITE_MAX_HALF_N)?;
    if d > half_n {
        return Err(Error::invalid(format!(
            "degree {d} exceeds the class size {half_n}"
        )));
    }
    let n = 2 * half_n;
    let side: Vec<u32> = (0..n).map(|v| (v >= half_n) as u32).collect();
    let mut start = Graph::new(n)?;
    start.set_bipartition(full_mask(half_n))?;
    let mut states = vec![start];
    for k in 0..half_n {
        let remaining_left = half_n - k - 1;
        let mut next: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
        for g in &states {
            let open: u64 = (half_n..n)
                .filter(|&w| g.degree(w) < d)
                .fold(0, |m, w| m | 1 << w);
            for choice in subsets_of_size(open, d) {
                let mut h = g.clone();
                for w in bits(choice) {
                    h.add_edge(k, w)?;
                }
                let ok = (half_n..n).all(|w| d - h.degree(w) <= remaining_left);
                if ok {
                    next.entry(canonical_form_colored(&h, &side)?).or_insert(h);
                }
            }
        }
        states = next.into_values().collect();
    }
    finish(states)
}

/// One representative of every isomorphism class of simple graphs on `n`
/// vertices, in canonical-form order.
pub fn enumerate_all_graphs(n: usize) -> Result<Vec<Graph>> {
    check_cap("n for graph enumeration", n, ALL_GRAPHS_MAX_N)?;
    let mut states = vec![Graph::new(0)?];
    for k in 0..n {
        let mut next: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
        for g in &states {
            for s in 0..(1u64 << k) {
                let mut h = Graph::new(k + 1)?;
                for (u, v) in g.edges() {
                    h.add_edge(u, v)?;
                }
                for w in bits(s) {
                    h.add_edge(k, w)?;
                }
                next.entry(canonical_form(&h)?).or_insert(h);
            }
        }
        states = next.into_values().collect();
    }
    Ok(states)
}

fn finish(states: Vec<Graph>) -> Result<Vec<Graph>> {
    let mut out: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    for g in states {
        out.entry(canonical_form(&g)?).or_insert(g);
    }
    Ok(out.into_values().collect())
}

/// Whether vertices `from..n` can still reach degree `d` using only edges
/// among themselves.
fn completable(g: &Graph, d: usize, from: usize) -> bool {
    let n = g.n();
    let open: u64 = (from..n).filter(|&w| g.degree(w) < d).fold(0, |m, w| m | 1 << w);
    let mut total = 0;
    for w in bits(open) {
        let need = d - g.degree(w);
        let avail = (open & !g.neighbors(w) & !(1u64 << w)).count_ones() as usize;
        if need > avail {
            return false;
        }
        total += need;
    }
    total % 2 == 0
}

/// All submasks of `mask` with exactly `r` bits, in increasing order.
pub(crate) fn subsets_of_size(mask: u64, r: usize) -> impl Iterator<Item = u64> {
    let positions: Vec<usize> = bits(mask).collect();
    let m = positions.len();
    let mut idx: Vec<usize> = (0..r).collect();
    let mut done = r > m;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.iter().fold(0u64, |acc, &i| acc | 1 << positions[i]);
        // advance to the next r-combination of 0..m
        let mut i = r;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < m - r + i {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations() {
        assert_eq!(subsets_of_size(0b1011, 2).collect::<Vec<_>>(), vec![0b11, 0b1001, 0b1010]);
        assert_eq!(subsets_of_size(0b11, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(0b1, 2).count(), 0);
        assert_eq!(subsets_of_size(full_mask(9), 4).count(), 126);
    }

    #[test]
    fn small_regular_counts() {
        assert_eq!(enumerate_regular(4, 3).unwrap().len(), 1);
        assert_eq!(enumerate_regular(6, 3).unwrap().len(), 2);
        // five connected classes plus 2K4
        assert_eq!(enumerate_regular(8, 3).unwrap().len(), 6);
        assert_eq!(enumerate_regular(6, 2).unwrap().len(), 2);
        assert_eq!(enumerate_regular(5, 0).unwrap().len(), 1);
        assert!(enumerate_regular(5, 3).is_err());
        assert!(enumerate_regular(11, 2).is_err());
        assert!(enumerate_regular(4, 4).unwrap().is_empty());
    }

    #[test]
    fn small_bipartite_counts() {
        assert_eq!(enumerate_bipartite_regular(2, 2).unwrap().len(), 1);
        assert_eq!(enumerate_bipartite_regular(3, 2).unwrap().len(), 1);
        assert_eq!(enumerate_bipartite_regular(4, 2).unwrap().len(), 2);
        assert!(enumerate_bipartite_regular(3, 4).is_err());
        for g in enumerate_bipartite_regular(4, 3).unwrap() {
            assert_eq!(g.regular_degree(), Some(3));
            assert_eq!(g.bipartition(), Some(0b1111));
        }
    }

    #[test]
    fn all_graph_counts() {
        let counts: Vec<usize> = (0..=6)
            .map(|n| enumerate_all_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }
}
