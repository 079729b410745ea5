//! Canonical forms by individualisation and refinement.
//!
//! Vertices start in cells keyed by (colour, loop flag). Cells are refined to
//! an equitable ordered partition; when a cell remains non-singleton each of
//! its vertices is individualised in turn and the search recurses. Every leaf
//! is a discrete ordered partition, i.e. a vertex order, and the form is the
//! smallest leaf certificate (colours by position followed by the permuted
//! adjacency rows). Two vertices in the same cell that are twins (same loop
//! flag, same neighbourhood apart from each other) are swapped by an
//! automorphism fixing the current partition, so only one of them is
//! individualised.
//!
//! Equal forms imply isomorphic (coloured) graphs since the certificate is the
//! relabelled graph itself. Bipartition metadata is ignored.

use super::{bits, Graph};
use crate::error::{check_cap, Error, Result};

pub const CANON_MAX_VERTICES: usize = 24;

pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    canonical_form_colored(g, &vec![0; g.n()])
}

/// Canonical form of a vertex-coloured graph. Colours must be isomorphism
/// invariant labels; they are part of the form.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> Result<Vec<u8>> {
    let (cert, _) = canonical_labeling(g, colors)?;
    let mut out = Vec::with_capacity(1 + cert.len() * 8);
    out.push(g.n() as u8);
    for w in cert {
        out.extend_from_slice(&w.to_be_bytes());
    }
    Ok(out)
}

/// Returns the leaf certificate and the vertex order that produced it.
pub(crate) fn canonical_labeling(g: &Graph, colors: &[u32]) -> Result<(Vec<u64>, Vec<usize>)> {
    let n = g.n();
    check_cap("vertex count for canonical form", n, CANON_MAX_VERTICES)?;
    if colors.len() != n {
        return Err(Error::invalid("colour vector length differs from vertex count"));
    }
    let keys: Vec<(u32, bool)> = (0..n).map(|v| (colors[v], g.has_loop(v))).collect();
    let mut distinct = keys.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let cells: Vec<u32> = keys
        .iter()
        .map(|k| distinct.binary_search(k).unwrap() as u32)
        .collect();
    let mut search = Search {
        g,
        keys: &keys,
        best: None,
    };
    search.descend(cells);
    Ok(search.best.unwrap_or_default())
}

struct Search<'a> {
    g: &'a Graph,
    keys: &'a [(u32, bool)],
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u32>) {
        let n = self.g.n();
        let ncells = refine(self.g, &mut cells);
        if ncells == n {
            self.leaf(&cells);
            return;
        }
        let mut size = vec![0usize; ncells];
        for &c in &cells {
            size[c as usize] += 1;
        }
        let target = size.iter().position(|&s| s > 1).unwrap() as u32;
        let members: Vec<usize> = (0..n).filter(|&v| cells[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let next: Vec<u32> = cells
                .iter()
                .enumerate()
                .map(|(w, &c)| {
                    if c > target || (c == target && w != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            self.descend(next);
        }
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let g = self.g;
        let mask = !((1u64 << u) | (1u64 << v));
        g.has_loop(u) == g.has_loop(v) && g.neighbors(u) & mask == g.neighbors(v) & mask
    }

    fn leaf(&mut self, cells: &[u32]) {
        let n = self.g.n();
        let mut order = vec![0usize; n];
        for (v, &c) in cells.iter().enumerate() {
            order[c as usize] = v;
        }
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut cert = Vec::with_capacity(2 * n);
        for &v in &order {
            let (c, l) = self.keys[v];
            cert.push((c as u64) << 1 | l as u64);
        }
        for &v in &order {
            cert.push(bits(self.g.neighbors(v)).fold(0u64, |m, w| m | 1 << (63 - pos[w])));
        }
        let better = match &self.best {
            None => true,
            Some((b, _)) => cert < *b,
        };
        if better {
            self.best = Some((cert, order));
        }
    }
}

/// Refine an ordered partition (cell id per vertex) to the coarsest equitable
/// refinement. Cell ids stay ordered canonically. Returns the cell count.
fn refine(g: &Graph, cells: &mut [u32]) -> usize {
    let n = g.n();
    let mut ncells = count_cells(cells);
    loop {
        let mut keyed: Vec<(Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut key = vec![0u32; ncells + 1];
                key[0] = cells[v];
                for w in bits(g.neighbors(v)) {
                    key[1 + cells[w] as usize] += 1;
                }
                (key, v)
            })
            .collect();
        keyed.sort_unstable();
        let mut next = 0u32;
        for i in 0..n {
            if i > 0 && keyed[i].0 != keyed[i - 1].0 {
                next += 1;
            }
            cells[keyed[i].1] = next;
        }
        let count = if n == 0 { 0 } else { next as usize + 1 };
        if count == ncells {
            return count;
        }
        ncells = count;
    }
}

fn count_cells(cells: &[u32]) -> usize {
    cells.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_bipartite, cycle, disjoint_union, knd, Graph};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    fn random_relabel(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.relabel(&perm).unwrap()
    }

    #[test]
    fn invariant_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let petersen = {
            let mut e = Vec::new();
            for i in 0..5 {
                e.push((i, (i + 1) % 5));
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::from_edges(10, &e).unwrap()
        };
        let graphs = vec![
            complete(3).unwrap(),
            prism(),
            complete_bipartite(3).unwrap(),
            knd(6, 2).unwrap(),
            petersen,
            cycle(9).unwrap(),
        ];
        for g in graphs {
            let f = canonical_form(&g).unwrap();
            for _ in 0..100 {
                assert_eq!(canonical_form(&random_relabel(&g, &mut rng)).unwrap(), f);
            }
        }
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let c4 = cycle(4).unwrap();
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_ne!(canonical_form(&c4).unwrap(), canonical_form(&two_k2).unwrap());
        assert_ne!(
            canonical_form(&complete_bipartite(3).unwrap()).unwrap(),
            canonical_form(&prism()).unwrap()
        );
        let c6 = cycle(6).unwrap();
        let two_c3 = disjoint_union(&[complete(3).unwrap(), complete(3).unwrap()]).unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&two_c3).unwrap());
    }

    #[test]
    fn loops_and_colours_matter() {
        let a = crate::graph::h_ind();
        let mut b = Graph::with_loops(2).unwrap();
        b.add_edge(0, 1).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let p = crate::graph::path(3).unwrap();
        let f1 = canonical_form_colored(&p, &[1, 0, 0]).unwrap();
        let f2 = canonical_form_colored(&p, &[0, 0, 1]).unwrap();
        let f3 = canonical_form_colored(&p, &[0, 1, 0]).unwrap();
        assert_eq!(f1, f2);
        assert_ne!(f1, f3);
    }

    #[test]
    fn size_cap() {
        let g = Graph::new(30).unwrap();
        assert!(canonical_form(&g).is_err());
    }
}
