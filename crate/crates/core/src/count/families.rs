//! Set-family counts: traces, distinguishing families, projections of
//! lattice bodies and triangle-intersecting graph families.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;

use crate::error::{check_cap, Error, Result};
use crate::graph::{full_mask, LatticeBody, SetFamily};

pub const DISTINGUISHING_CHECK_MAX_N: usize = 22;
pub const MIN_DISTINGUISHING_MAX_N: usize = 6;

/// `{ A & F : A in family }`, without repeats, in increasing order.
pub fn trace(family: &SetFamily, f: u32) -> Result<SetFamily> {
    let ground = full_mask(family.n()) as u32;
    if f & !ground != 0 {
        return Err(Error::invalid("trace set is not a subset of the ground set"));
    }
    let members: BTreeSet<u32> = family.members().iter().map(|&a| a & f).collect();
    SetFamily::new(family.n(), members.into_iter().collect())
}

/// Whether the vector `(|A & D_i|)_i` determines `A` among all subsets of
/// the ground set.
pub fn is_distinguishing(d: &SetFamily) -> Result<bool> {
    let n = d.n();
    check_cap("ground set size for distinguishing", n, DISTINGUISHING_CHECK_MAX_N)?;
    Ok(distinguishes(n, d.members()))
}

fn distinguishes(n: usize, members: &[u32]) -> bool {
    let count = 1usize << n;
    if members.len() * 5 <= 128 {
        let mut keys: Vec<u128> = (0..count as u32)
            .map(|a| {
                members
                    .iter()
                    .fold(0u128, |acc, &m| acc << 5 | (a & m).count_ones() as u128)
            })
            .collect();
        keys.sort_unstable();
        keys.windows(2).all(|w| w[0] != w[1])
    } else {
        let mut seen = HashSet::with_capacity(count);
        (0..count as u32).all(|a| seen.insert(members.iter().map(|&m| (a & m).count_ones() as u8).collect::<Vec<u8>>()))
    }
}

/// Smallest distinguishing family on `n` points, with the first witness
/// found (families of distinct non-empty sets, lexicographic order).
pub fn min_distinguishing(n: usize) -> Result<(usize, SetFamily)> {
    check_cap("ground set size for the exhaustive search", n, MIN_DISTINGUISHING_MAX_N)?;
    if n == 0 {
        return Ok((0, SetFamily::new(0, Vec::new())?));
    }
    let sets: Vec<u32> = (1..1u32 << n).collect();
    for ell in 1..=n {
        let mut idx: Vec<usize> = (0..ell).collect();
        loop {
            let members: Vec<u32> = idx.iter().map(|&i| sets[i]).collect();
            if distinguishes(n, &members) {
                return Ok((ell, SetFamily::new(n, members)?));
            }
            if !next_combination(&mut idx, sets.len()) {
                break;
            }
        }
    }
    unreachable!("the singletons distinguish")
}

fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let r = idx.len();
    for i in (0..r).rev() {
        if idx[i] < m - r + i {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Volume (number of cells) and the sizes of the projections obtained by
/// deleting each coordinate in turn.
pub fn body_volume_and_projections(b: &LatticeBody) -> (BigUint, Vec<BigUint>) {
    let vol = BigUint::from(b.cells().len());
    let projs = (0..b.dim())
        .map(|j| {
            let shadow: HashSet<Vec<i64>> = b
                .cells()
                .iter()
                .map(|c| {
                    let mut p = c.clone();
                    p.remove(j);
                    p
                })
                .collect();
            BigUint::from(shadow.len())
        })
        .collect();
    (vol, projs)
}

/// Edge indices of K_n: pair `(u, v)`, `u < v`, in lexicographic order.
fn edge_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            idx[u][v] = k;
            idx[v][u] = k;
            k += 1;
        }
    }
    idx
}

fn triangle_masks(n: usize) -> Vec<u64> {
    let idx = edge_index(n);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                out.push(1 << idx[a][b] | 1 << idx[a][c] | 1 << idx[b][c]);
            }
        }
    }
    out
}

/// Whether the graph on `n` vertices with the given edge mask (edges
/// indexed lexicographically) contains a triangle.
pub fn graph_has_triangle(n: usize, edges: u64) -> bool {
    triangle_masks(n).iter().any(|&t| edges & t == t)
}

/// Largest family of graphs on `n` labelled vertices in which every two
/// members (and so every member with itself) share a triangle.
pub fn max_triangle_intersecting(n: usize) -> Result<(usize, Vec<u64>)> {
    if !(3..=4).contains(&n) {
        return Err(Error::invalid("triangle-intersecting search supports n = 3 or 4"));
    }
    let m = n * (n - 1) / 2;
    let tris = triangle_masks(n);
    let has = |e: u64| tris.iter().any(|&t| e & t == t);
    let graphs: Vec<u64> = (0..1u64 << m).collect();
    let mut adj = vec![0u64; graphs.len()];
    let mut candidates = 0u64;
    for (a, &ga) in graphs.iter().enumerate() {
        if has(ga) {
            candidates |= 1 << a;
        }
        for (b, &gb) in graphs.iter().enumerate() {
            if a != b && has(ga & gb) {
                adj[a] |= 1 << b;
            }
        }
    }
    let clique = max_clique(&adj, candidates);
    Ok((clique.len(), clique.iter().map(|&v| graphs[v]).collect()))
}

/// A maximum clique among the vertices of `candidates` in the graph with
/// adjacency rows `adj`, by branch and bound with greedy colouring bounds.
pub fn max_clique(adj: &[u64], candidates: u64) -> Vec<usize> {
    let mut best = Vec::new();
    let mut current = Vec::new();
    expand(adj, &mut current, candidates, &mut best);
    best.sort_unstable();
    best
}

fn expand(adj: &[u64], current: &mut Vec<usize>, mut p: u64, best: &mut Vec<usize>) {
    let (order, colors) = color_sort(adj, p);
    for i in (0..order.len()).rev() {
        if current.len() + colors[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let next = p & adj[v];
        if next == 0 {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand(adj, current, next, best);
        }
        current.pop();
        p &= !(1 << v);
    }
}

/// Vertices of `p` in order of greedy colour class, with the class number
/// (1-based) of each; the class number bounds the clique size so far.
fn color_sort(adj: &[u64], p: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::new();
    let mut colors = Vec::new();
    let mut uncolored = p;
    let mut k = 0;
    while uncolored != 0 {
        k += 1;
        let mut q = uncolored;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1 << v) & !adj[v];
            uncolored &= !(1 << v);
            order.push(v);
            colors.push(k);
        }
    }
    (order, colors)
}
