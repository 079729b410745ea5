//! Homomorphism and embedding counts by backtracking over vertex images.
//!
//! For homomorphisms the search fixes images only on the complement of a
//! maximal independent set `I`; each vertex of `I` then has
//! `|common neighbourhood of its neighbours' images|` choices, independently.

use num_bigint::BigUint;

use super::coloring::bfs_order;
use super::Tally;
use crate::error::Result;
use crate::graph::{bits, full_mask, Graph};

/// Number of maps `V(g) -> V(h)` sending edges to edges (loops of `g` to
/// loops of `h`). `h` may have loops.
pub fn hom_count(g: &Graph, h: &Graph) -> Result<BigUint> {
    let mut total = BigUint::from(1u32);
    for comp in g.components() {
        let c = hom_component(g, h, comp);
        if c == BigUint::default() {
            return Ok(c);
        }
        total *= c;
    }
    Ok(total)
}

fn hom_component(g: &Graph, h: &Graph, comp: u64) -> BigUint {
    let mut verts: Vec<usize> = bits(comp).collect();
    verts.sort_by_key(|&v| (g.degree(v), v));
    let mut free = 0u64;
    for &v in &verts {
        if g.neighbors(v) & free == 0 {
            free |= 1 << v;
        }
    }
    let order: Vec<usize> = bfs_order(g, comp).into_iter().filter(|v| free >> v & 1 == 0).collect();
    let nh: Vec<u64> = (0..h.n()).map(|x| h.neighbors_with_loop(x)).collect();
    let mut search = HomSearch {
        g,
        h,
        nh,
        order,
        free: bits(free).collect(),
        image: vec![usize::MAX; g.n()],
        tally: Tally::default(),
    };
    search.descend(0);
    search.tally.total()
}

struct HomSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    nh: Vec<u64>,
    order: Vec<usize>,
    free: Vec<usize>,
    image: Vec<usize>,
    tally: Tally,
}

impl HomSearch<'_> {
    /// Admissible images for `v` given the images already fixed.
    fn candidates(&self, v: usize) -> u64 {
        let mut c = full_mask(self.h.n());
        if self.g.has_loop(v) {
            c &= self.h.loops();
        }
        for u in bits(self.g.neighbors(v)) {
            if self.image[u] != usize::MAX {
                c &= self.nh[self.image[u]];
            }
        }
        c
    }

    fn descend(&mut self, i: usize) {
        if i == self.order.len() {
            self.leaf();
            return;
        }
        let v = self.order[i];
        for x in bits(self.candidates(v)) {
            self.image[v] = x;
            self.descend(i + 1);
        }
        self.image[v] = usize::MAX;
    }

    fn leaf(&mut self) {
        let mut prod: Option<u128> = Some(1);
        let mut big: Option<BigUint> = None;
        for &w in &self.free {
            let k = self.candidates(w).count_ones() as u128;
            if k == 0 {
                return;
            }
            match prod.and_then(|p| p.checked_mul(k)) {
                Some(p) => prod = Some(p),
                None => {
                    let b = big.take().unwrap_or_else(|| BigUint::from(prod.unwrap_or(1)));
                    big = Some(b * k);
                    prod = None;
                }
            }
        }
        match (prod, big) {
            (Some(p), _) => self.tally.add(p),
            (None, Some(b)) => self.tally.add_big(b),
            (None, None) => unreachable!("product tracked in one of the two forms"),
        }
    }
}

/// Number of injective homomorphisms from `h` into `g`.
pub fn embed_count(h: &Graph, g: &Graph) -> Result<BigUint> {
    if h.n() > g.n() {
        return Ok(BigUint::default());
    }
    let order = bfs_order(h, h.vertex_mask());
    let mut image = vec![usize::MAX; h.n()];
    let mut tally = Tally::default();
    embed_rec(h, g, &order, 0, 0, &mut image, &mut tally);
    Ok(tally.total())
}

fn embed_rec(h: &Graph, g: &Graph, order: &[usize], i: usize, used: u64, image: &mut [usize], tally: &mut Tally) {
    if i == order.len() {
        tally.add(1);
        return;
    }
    let v = order[i];
    let mut c = g.vertex_mask() & !used;
    if h.has_loop(v) {
        c &= g.loops();
    }
    for u in bits(h.neighbors(v)) {
        if image[u] != usize::MAX {
            c &= g.neighbors(image[u]);
        }
    }
    for x in bits(c) {
        image[v] = x;
        embed_rec(h, g, order, i + 1, used | 1 << x, image, tally);
    }
    image[v] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, empty, h_ind, h_wr, path};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// All |V(h)|^|V(g)| maps, optionally injective only.
    fn oracle(g: &Graph, h: &Graph, injective: bool) -> u64 {
        let (n, m) = (g.n(), h.n());
        if m == 0 {
            return (n == 0) as u64;
        }
        let mut f = vec![0usize; n];
        let mut count = 0;
        loop {
            let ok = g.edges().iter().all(|&(u, v)| h.has_edge(f[u], f[v]))
                && (!injective || (0..n).all(|a| (a + 1..n).all(|b| f[a] != f[b])));
            count += ok as u64;
            let mut i = 0;
            while i < n {
                f[i] += 1;
                if f[i] < m {
                    break;
                }
                f[i] = 0;
                i += 1;
            }
            if i == n {
                return count;
            }
        }
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, loops: bool) -> Graph {
        let mut g = Graph::with_loops(n).unwrap();
        for u in 0..n {
            for v in u..n {
                if (u != v || loops) && rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    #[test]
    fn examples() {
        let k1 = empty(1).unwrap();
        assert_eq!(hom_count(&k1, &h_wr()).unwrap(), 3u32.into());
        assert_eq!(hom_count(&complete_bipartite(3).unwrap(), &h_ind()).unwrap(), 15u32.into());
        // trace of A^4 for the looped path: eigenvalues 1, 1 + sqrt 2, 1 - sqrt 2
        assert_eq!(hom_count(&cycle(4).unwrap(), &h_wr()).unwrap(), 35u32.into());
        assert_eq!(oracle(&cycle(4).unwrap(), &h_wr(), false), 35);
        assert_eq!(hom_count(&complete_bipartite(3).unwrap(), &complete(4).unwrap()).unwrap(), 420u32.into());
        assert_eq!(hom_count(&empty(0).unwrap(), &complete(3).unwrap()).unwrap(), 1u32.into());
        assert_eq!(embed_count(&complete(3).unwrap(), &complete(3).unwrap()).unwrap(), 6u32.into());
        assert_eq!(embed_count(&complete(3).unwrap(), &complete(4).unwrap()).unwrap(), 24u32.into());
        let p4 = path(4).unwrap();
        assert_eq!(embed_count(&complete(2).unwrap(), &p4).unwrap(), 6u32.into());
        assert_eq!(embed_count(&cycle(4).unwrap(), &complete(4).unwrap()).unwrap(), 24u32.into());
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..150 {
            let (gn, hn) = (rng.gen_range(0..=6), rng.gen_range(1..=4));
            let g = random_graph(&mut rng, gn, 0.45, false);
            let h = random_graph(&mut rng, hn, 0.5, true);
            assert_eq!(hom_count(&g, &h).unwrap(), BigUint::from(oracle(&g, &h, false)));
            let (bn, sn) = (rng.gen_range(1..=7), rng.gen_range(1..=4));
            let host = random_graph(&mut rng, bn, 0.6, false);
            let small = random_graph(&mut rng, sn, 0.5, false);
            assert_eq!(embed_count(&small, &host).unwrap(), BigUint::from(oracle(&small, &host, true)));
            assert!(embed_count(&small, &host).unwrap() <= hom_count(&small, &host).unwrap());
        }
    }

    #[test]
    fn huge_products_spill() {
        // 40 isolated vertices into a 64-vertex target: 64^40 > 2^128
        let g = empty(40).unwrap();
        let h = Graph::new(64).unwrap();
        assert_eq!(hom_count(&g, &h).unwrap(), BigUint::from(64u32).pow(40));
        let star = Graph::from_edges(41, &(1..41).map(|v| (0, v)).collect::<Vec<_>>()).unwrap();
        let k64 = complete(64).unwrap();
        assert_eq!(hom_count(&star, &k64).unwrap(), BigUint::from(64u32) * BigUint::from(63u32).pow(40));
    }
}
