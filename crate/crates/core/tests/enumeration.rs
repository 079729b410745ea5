//! Enumeration and canonical forms checked against independent oracles.

use std::collections::BTreeSet;

use entcount::graph::{
    canonical_form, enumerate_all_graphs, enumerate_bipartite_regular, enumerate_regular, Graph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Integer partitions of `n` as multiplicity vectors `m[i]` = number of
/// cycles of length `i`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            cur[part] += 1;
            rec(rem - part, part, cur, out);
            cur[part] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut vec![0; n + 1], &mut out);
    out
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// A permutation with the given cycle type, as an image vector.
fn permutation_of_type(m: &[usize]) -> Vec<usize> {
    let mut perm = Vec::new();
    let mut next = 0;
    for (len, &count) in m.iter().enumerate() {
        for _ in 0..count {
            for k in 0..len {
                perm.push(next + (k + 1) % len);
            }
            next += len;
        }
    }
    perm
}

/// Number of labelled d-regular graphs fixed by `perm`: unions of edge orbits
/// with every degree equal to d.
fn fixed_regular(perm: &[usize], d: usize) -> u128 {
    let n = perm.len();
    let mut seen = BTreeSet::new();
    let mut orbits: Vec<Vec<(usize, usize)>> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if seen.contains(&(u, v)) {
                continue;
            }
            let mut orbit = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                let e = (a.min(b), a.max(b));
                if !seen.insert(e) {
                    break;
                }
                orbit.push(e);
                a = perm[a];
                b = perm[b];
            }
            orbits.push(orbit);
        }
    }
    // vertex v is final once all orbits touching it are decided
    let last_touch: Vec<usize> = (0..n)
        .map(|v| {
            orbits
                .iter()
                .rposition(|o| o.iter().any(|&(a, b)| a == v || b == v))
                .unwrap_or(0)
        })
        .collect();
    fn rec(
        i: usize,
        orbits: &[Vec<(usize, usize)>],
        deg: &mut Vec<usize>,
        d: usize,
        last_touch: &[usize],
    ) -> u128 {
        if i == orbits.len() {
            return deg.iter().all(|&x| x == d) as u128;
        }
        let mut total = 0;
        for take in [false, true] {
            if take {
                for &(a, b) in &orbits[i] {
                    deg[a] += 1;
                    deg[b] += 1;
                }
            }
            let ok = deg.iter().all(|&x| x <= d)
                && (0..deg.len()).all(|v| last_touch[v] != i || deg[v] == d);
            if ok {
                total += rec(i + 1, orbits, deg, d, last_touch);
            }
            if take {
                for &(a, b) in &orbits[i] {
                    deg[a] -= 1;
                    deg[b] -= 1;
                }
            }
        }
        total
    }
    if orbits.is_empty() {
        return (d == 0) as u128;
    }
    rec(0, &orbits, &mut vec![0; n], d, &last_touch)
}

/// Burnside: classes = sum over cycle types of Fix / z.
fn burnside_regular_classes(n: usize, d: usize) -> u128 {
    let mut weighted = 0u128;
    for m in partitions(n) {
        let z: u128 = m
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u128).pow(c as u32) * factorial(c))
            .product();
        let fix = fixed_regular(&permutation_of_type(&m), d);
        weighted += fix * (factorial(n) / z);
    }
    assert_eq!(weighted % factorial(n), 0);
    weighted / factorial(n)
}

#[test]
fn regular_counts_match_burnside() {
    for n in 1..=8usize {
        for d in 0..n {
            if n * d % 2 == 1 {
                continue;
            }
            let got = enumerate_regular(n, d).unwrap().len() as u128;
            assert_eq!(got, burnside_regular_classes(n, d), "n={n} d={d}");
        }
    }
}

#[test]
fn regular_outputs_are_regular_and_distinct() {
    for (n, d) in [(8, 3), (10, 3), (9, 4), (10, 4)] {
        let graphs = enumerate_regular(n, d).unwrap();
        let forms: BTreeSet<Vec<u8>> = graphs.iter().map(|g| canonical_form(g).unwrap()).collect();
        assert_eq!(forms.len(), graphs.len());
        assert!(graphs.iter().all(|g| g.regular_degree() == Some(d)));
        let sorted: Vec<Vec<u8>> = graphs.iter().map(|g| canonical_form(g).unwrap()).collect();
        assert!(sorted.windows(2).all(|w| w[0] < w[1]));
    }
    // all cubic graphs on 10 vertices: 19 connected, plus K4 with either
    // cubic graph on 6 vertices
    assert_eq!(enumerate_regular(10, 3).unwrap().len(), 21);
}

fn matrix_canonical(rows: &[u32], h: usize) -> Vec<u32> {
    let perms = all_perms(h);
    let mut best: Option<Vec<u32>> = None;
    let transposed = transpose(rows, h);
    for m in [rows.to_vec(), transposed] {
        for rp in &perms {
            for cp in &perms {
                let mut out: Vec<u32> = (0..h)
                    .map(|i| {
                        let r = m[rp[i]];
                        (0..h).fold(0u32, |acc, j| acc | ((r >> cp[j]) & 1) << j)
                    })
                    .collect();
                out.shrink_to_fit();
                if best.as_ref().map_or(true, |b| out < *b) {
                    best = Some(out);
                }
            }
        }
    }
    best.unwrap()
}

fn transpose(rows: &[u32], h: usize) -> Vec<u32> {
    (0..h)
        .map(|j| (0..h).fold(0u32, |acc, i| acc | ((rows[i] >> j) & 1) << i))
        .collect()
}

fn all_perms(h: usize) -> Vec<Vec<usize>> {
    if h == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(h - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, h - 1);
            out.push(q);
        }
    }
    out
}

fn regular_matrices(h: usize, d: usize) -> Vec<Vec<u32>> {
    let rows: Vec<u32> = (0..1u32 << h).filter(|r| r.count_ones() as usize == d).collect();
    let mut out = Vec::new();
    fn rec(i: usize, h: usize, d: usize, rows: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == h {
            if (0..h).all(|j| cur.iter().filter(|r| *r >> j & 1 == 1).count() == d) {
                out.push(cur.clone());
            }
            return;
        }
        for &r in rows {
            cur.push(r);
            if (0..h).all(|j| cur.iter().filter(|x| *x >> j & 1 == 1).count() <= d) {
                rec(i + 1, h, d, rows, cur, out);
            }
            cur.pop();
        }
    }
    rec(0, h, d, &rows, &mut Vec::new(), &mut out);
    out
}

#[test]
fn bipartite_counts_match_matrix_oracle() {
    for h in 1..=5usize {
        for d in 1..=h {
            let classes: BTreeSet<Vec<u32>> = regular_matrices(h, d)
                .iter()
                .map(|m| matrix_canonical(m, h))
                .collect();
            let got = enumerate_bipartite_regular(h, d).unwrap().len();
            assert_eq!(got, classes.len(), "half_n={h} d={d}");
        }
    }
}

#[test]
fn bipartite_larger_cases_are_well_formed() {
    for (h, d) in [(6, 3), (7, 3), (6, 2), (7, 7)] {
        let graphs = enumerate_bipartite_regular(h, d).unwrap();
        assert!(!graphs.is_empty());
        for g in &graphs {
            assert_eq!(g.regular_degree(), Some(d));
            assert!(g.two_coloring().is_some());
        }
    }
    assert_eq!(enumerate_bipartite_regular(7, 7).unwrap().len(), 1);
}

fn brute_canonical(g: &Graph) -> Vec<u64> {
    let n = g.n();
    all_perms(n)
        .into_iter()
        .map(|p| {
            (0..n)
                .map(|i| (0..n).fold(0u64, |m, j| m | (g.has_edge(p[i], p[j]) as u64) << j))
                .collect::<Vec<u64>>()
        })
        .min()
        .unwrap()
}

#[test]
fn canonical_form_agrees_with_brute_force_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..120 {
        let n = rng.gen_range(2..=6);
        let p: f64 = rng.gen_range(0.2..0.8);
        let mk = |rng: &mut ChaCha8Rng| {
            let mut g = Graph::new(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let same_canon = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
        let same_brute = brute_canonical(&a) == brute_canonical(&b);
        assert_eq!(same_canon, same_brute);
    }
}

#[test]
fn all_graphs_seven_and_eight() {
    assert_eq!(enumerate_all_graphs(7).unwrap().len(), 1044);
    assert_eq!(enumerate_all_graphs(8).unwrap().len(), 12346);
}
