//! Graphs on at most 64 vertices, 0-1 matrices, lattice bodies and set
//! families, together with named generators, canonical forms, isomorph-free
//! enumeration and the text file formats.
//!
//! Adjacency is stored as one `u64` row per vertex. Loops live in a separate
//! bitset and never appear in the adjacency rows. The degree of a vertex counts
//! its loop once.

mod canon;
mod enumerate;
mod io;
mod named;
mod structures;

pub use canon::{canonical_form, canonical_form_colored, CANON_MAX_VERTICES};
pub use enumerate::{
    enumerate_all_graphs, enumerate_bipartite_regular, enumerate_regular, ALL_GRAPHS_MAX_N,
    BIPARTITE_MAX_HALF_N, REGULAR_MAX_N,
};
pub use io::{
    parse_graph, parse_matrix, read_graph, read_matrix, render_graph, render_matrix, write_graph,
    write_matrix,
};
pub use named::{
    complete, complete_bipartite, cycle, disjoint_union, empty, h_ind, h_wr, knd, parse_named,
    path,
};
pub use structures::{LatticeBody, SetFamily, ZeroOneMatrix, LATTICE_COORD_MAX, SET_FAMILY_MAX_N};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Bitmask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate over the set bits of a mask, lowest first.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    loops_allowed: bool,
    loops: u64,
    bipartition: Option<u64>,
}

impl Graph {
    /// Loop-free graph with no edges.
    pub fn new(n: usize) -> Result<Self> {
        Self::build(n, false)
    }

    /// Graph with no edges in which loops may later be added.
    pub fn with_loops(n: usize) -> Result<Self> {
        Self::build(n, true)
    }

    fn build(n: usize, loops_allowed: bool) -> Result<Self> {
        crate::error::check_cap("vertex count", n, MAX_VERTICES)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
            loops_allowed,
            loops: 0,
            bipartition: None,
        })
    }

    /// Build a loop-free graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops_allowed
    }

    pub fn loops(&self) -> u64 {
        self.loops
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops >> v & 1 == 1
    }

    pub fn has_loops(&self) -> bool {
        self.loops != 0
    }

    pub fn bipartition(&self) -> Option<u64> {
        self.bipartition
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Neighbours of `v`, excluding `v` itself even when looped.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Neighbours of `v` including `v` when it carries a loop.
    #[inline]
    pub fn neighbors_with_loop(&self, v: usize) -> u64 {
        self.adj[v] | (self.loops & (1 << v))
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.has_loop(u)
        } else {
            self.adj[u] >> v & 1 == 1
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            if !self.loops_allowed {
                return Err(Error::invalid(format!("loop at {u} in a loop-free graph")));
            }
            if self.bipartition.is_some() {
                return Err(Error::invalid("loops are not allowed in a bipartite graph"));
            }
            self.loops |= 1 << u;
            return Ok(());
        }
        if let Some(left) = self.bipartition {
            if (left >> u & 1) == (left >> v & 1) {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) does not cross the bipartition"
                )));
            }
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u == v {
            self.loops &= !(1 << u);
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    /// Attach bipartition metadata; `left` is the bitmask of one class.
    pub fn set_bipartition(&mut self, left: u64) -> Result<()> {
        if left & !self.vertex_mask() != 0 {
            return Err(Error::invalid("bipartition mask names vertices out of range"));
        }
        if self.loops != 0 {
            return Err(Error::invalid("a looped graph cannot carry a bipartition"));
        }
        for u in 0..self.n {
            let same_side = if left >> u & 1 == 1 { left } else { !left };
            if self.adj[u] & same_side & self.vertex_mask() != 0 {
                return Err(Error::invalid(format!(
                    "vertex {u} has a neighbour in its own class"
                )));
            }
        }
        self.bipartition = Some(left);
        Ok(())
    }

    pub fn clear_bipartition(&mut self) {
        self.bipartition = None;
    }

    /// Degree with a loop counted once.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize + self.has_loop(v) as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn loop_count(&self) -> usize {
        self.loops.count_ones() as usize
    }

    /// All edges `(u, v)` with `u <= v`, loops included, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            if self.has_loop(u) {
                out.push((u, u));
            }
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Vertex masks of the connected components, ordered by lowest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// A proper 2-colouring as the mask of the class containing vertex 0 of
    /// each component, or `None` when the graph has an odd cycle or a loop.
    pub fn two_coloring(&self) -> Option<u64> {
        if self.loops != 0 {
            return None;
        }
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for v in bits(self.adj[u]) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        stack.push(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(
            color
                .iter()
                .enumerate()
                .filter(|(_, &c)| c == 0)
                .fold(0u64, |m, (v, _)| m | 1 << v),
        )
    }

    /// Subgraph induced on the vertices of `mask`, relabelled in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let mut g = Graph {
            n: verts.len(),
            adj: vec![0; verts.len()],
            loops_allowed: self.loops_allowed,
            loops: 0,
            bipartition: None,
        };
        for (i, &u) in verts.iter().enumerate() {
            if self.has_loop(u) {
                g.loops |= 1 << i;
            }
            for (j, &v) in verts.iter().enumerate() {
                if self.adj[u] >> v & 1 == 1 {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        g
    }

    /// Relabel so that vertex `v` becomes `perm[v]`. Bipartition metadata is
    /// carried along.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n || !is_permutation(perm) {
            return Err(Error::invalid("relabelling is not a permutation of the vertices"));
        }
        let map_mask = |m: u64| bits(m).fold(0u64, |acc, v| acc | 1 << perm[v]);
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
            loops_allowed: self.loops_allowed,
            loops: map_mask(self.loops),
            bipartition: self.bipartition.map(map_mask),
        };
        for u in 0..self.n {
            g.adj[perm[u]] = map_mask(self.adj[u]);
        }
        Ok(g)
    }

    /// The n x n adjacency matrix; loops sit on the diagonal.
    pub fn adjacency_matrix(&self) -> ZeroOneMatrix {
        let rows = (0..self.n).map(|v| self.neighbors_with_loop(v)).collect();
        ZeroOneMatrix::from_rows(self.n, rows).expect("graph sizes fit matrix caps")
    }

    /// Biadjacency matrix of a balanced bipartite graph: rows are the vertices
    /// of the class containing the lowest vertex, columns the other class,
    /// both in increasing order.
    pub fn biadjacency_matrix(&self) -> Result<ZeroOneMatrix> {
        let left = match self.bipartition {
            Some(l) => l,
            None => self
                .two_coloring()
                .ok_or_else(|| Error::invalid("graph is not bipartite"))?,
        };
        let left = if left & 1 == 1 || self.n == 0 {
            left
        } else {
            !left & self.vertex_mask()
        };
        let right = !left & self.vertex_mask();
        let lv: Vec<usize> = bits(left).collect();
        let rv: Vec<usize> = bits(right).collect();
        if lv.len() != rv.len() {
            return Err(Error::invalid("bipartition classes have different sizes"));
        }
        let rows = lv
            .iter()
            .map(|&u| {
                rv.iter()
                    .enumerate()
                    .filter(|(_, &w)| self.adj[u] >> w & 1 == 1)
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        ZeroOneMatrix::from_rows(lv.len(), rows)
    }

    /// The bipartite graph of a square 0-1 matrix: rows become vertices
    /// `0..n`, columns `n..2n`.
    pub fn from_biadjacency(m: &ZeroOneMatrix) -> Result<Graph> {
        let n = m.n();
        let mut g = Graph::new(2 * n)?;
        for i in 0..n {
            for j in bits(m.row(i)) {
                g.add_edge(i, n + j)?;
            }
        }
        g.set_bipartition(full_mask(n))?;
        Ok(g)
    }
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| {
        p < perm.len() && !std::mem::replace(&mut seen[p], true)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_counts_loop_once() {
        let mut g = Graph::with_loops(2).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 0).unwrap();
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.degree(1), 1);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges(), vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn loop_rejected_without_flag() {
        let mut g = Graph::new(3).unwrap();
        assert!(g.add_edge(1, 1).is_err());
    }

    #[test]
    fn bipartition_checked() {
        let mut g = cycle(5).unwrap();
        assert!(g.two_coloring().is_none());
        assert!(g.set_bipartition(0b10101).is_err());
        let mut c6 = cycle(6).unwrap();
        c6.set_bipartition(0b010101).unwrap();
        assert!(c6.add_edge(0, 2).is_err());
    }

    #[test]
    fn components_and_induced() {
        let g = knd(4, 2).unwrap();
        assert_eq!(g.components().len(), 2);
        let h = g.induced(g.components()[0]);
        assert_eq!(h.n(), 4);
        assert_eq!(h.edge_count(), 4);
    }

    #[test]
    fn biadjacency_round_trip() {
        let g = complete_bipartite(3).unwrap();
        let m = g.biadjacency_matrix().unwrap();
        assert_eq!(m.row_sums(), vec![3, 3, 3]);
        let back = Graph::from_biadjacency(&m).unwrap();
        assert_eq!(canonical_form(&back).unwrap(), canonical_form(&g).unwrap());
    }

    #[test]
    fn relabel_rejects_non_permutation() {
        let g = cycle(4).unwrap();
        assert!(g.relabel(&[0, 0, 1, 2]).is_err());
        let r = g.relabel(&[1, 2, 3, 0]).unwrap();
        assert_eq!(r.edge_count(), 4);
    }
}
