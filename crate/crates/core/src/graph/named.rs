//! Generators for the graphs referenced throughout: complete graphs,
//! complete bipartite graphs, disjoint unions of them, cycles, paths and the
//! two small looped target graphs.

use super::{full_mask, Graph, MAX_VERTICES};
use crate::error::{check_cap, Error, Result};

pub fn empty(n: usize) -> Result<Graph> {
    Graph::new(n)
}

/// K_n.
pub fn complete(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// K_{d,d} with classes `0..d` and `d..2d`.
pub fn complete_bipartite(d: usize) -> Result<Graph> {
    check_cap("vertex count", 2 * d, MAX_VERTICES)?;
    let mut g = Graph::new(2 * d)?;
    g.set_bipartition(full_mask(d))?;
    for u in 0..d {
        for v in d..2 * d {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// K(n, d): the disjoint union of `n / d` copies of K_{d,d}, on `2n`
/// vertices with `n * d` edges. Each copy occupies a contiguous block of
/// `2d` labels and the bipartition collects the first half of every block.
pub fn knd(n: usize, d: usize) -> Result<Graph> {
    if d == 0 || n % d != 0 {
        return Err(Error::invalid(format!("K(n,d) needs d | n, got n={n}, d={d}")));
    }
    check_cap("vertex count", 2 * n, MAX_VERTICES)?;
    let copies = n / d;
    let blocks: Vec<Graph> = (0..copies)
        .map(|_| complete_bipartite(d))
        .collect::<Result<_>>()?;
    let g = disjoint_union(&blocks)?;
    debug_assert_eq!(g.n(), 2 * n);
    debug_assert_eq!(g.edge_count(), n * d);
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("a cycle needs at least 3 vertices"));
    }
    let mut g = Graph::new(n)?;
    for v in 0..n {
        g.add_edge(v, (v + 1) % n)?;
    }
    Ok(g)
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Result<Graph> {
    let mut g = Graph::new(n)?;
    for v in 1..n {
        g.add_edge(v - 1, v)?;
    }
    Ok(g)
}

/// Two adjacent vertices with a loop on vertex 1 only. Homomorphisms into it
/// are independent sets (the preimage of vertex 0).
pub fn h_ind() -> Graph {
    let mut g = Graph::with_loops(2).expect("fixed size");
    g.add_edge(0, 1).expect("fixed edge");
    g.add_edge(1, 1).expect("fixed loop");
    g
}

/// Fully looped path on three vertices.
pub fn h_wr() -> Graph {
    let mut g = Graph::with_loops(3).expect("fixed size");
    for (u, v) in [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)] {
        g.add_edge(u, v).expect("fixed edge");
    }
    g
}

/// Disjoint union with consecutive vertex blocks. Bipartitions are merged
/// when every part carries one.
pub fn disjoint_union(parts: &[Graph]) -> Result<Graph> {
    let n: usize = parts.iter().map(|g| g.n()).sum();
    check_cap("vertex count", n, MAX_VERTICES)?;
    let loops = parts.iter().any(|g| g.loops_allowed());
    let mut out = if loops {
        Graph::with_loops(n)?
    } else {
        Graph::new(n)?
    };
    let mut offset = 0;
    let mut left = Some(0u64);
    for g in parts {
        for (u, v) in g.edges() {
            out.add_edge(u + offset, v + offset)?;
        }
        left = match (left, g.bipartition()) {
            (Some(acc), Some(l)) => Some(acc | l << offset),
            _ => None,
        };
        offset += g.n();
    }
    if let Some(l) = left {
        if !parts.is_empty() {
            out.set_bipartition(l)?;
        }
    }
    Ok(out)
}

/// Parse the command-line shorthand: `k_dd:3`, `knd:12,3`, `kn:5`,
/// `cycle:6`, `path:4`, `empty:3`, `h_ind`, `h_wr`.
pub fn parse_named(spec: &str) -> Result<Graph> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n, a),
        None => (spec, ""),
    };
    let nums: Vec<usize> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::invalid(format!("bad parameters in `{spec}`")))?
    };
    let one = |nums: &[usize]| -> Result<usize> {
        match nums {
            [x] => Ok(*x),
            _ => Err(Error::invalid(format!("`{name}` takes exactly one parameter"))),
        }
    };
    match name {
        "k_dd" | "kdd" => complete_bipartite(one(&nums)?),
        "knd" => match nums.as_slice() {
            [n, d] => knd(*n, *d),
            _ => Err(Error::invalid("`knd` takes two parameters: n,d")),
        },
        "kn" | "k" => complete(one(&nums)?),
        "cycle" | "c" => cycle(one(&nums)?),
        "path" | "p" => path(one(&nums)?),
        "empty" => empty(one(&nums)?),
        "h_ind" if nums.is_empty() => Ok(h_ind()),
        "h_wr" if nums.is_empty() => Ok(h_wr()),
        _ => Err(Error::invalid(format!("unknown graph shorthand `{spec}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k22_is_c4() {
        let g = complete_bipartite(2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        assert!(g.bipartition().is_some());
    }

    #[test]
    fn h_ind_shape() {
        let g = h_ind();
        assert_eq!((g.n(), g.edge_count(), g.loop_count()), (2, 1, 1));
        assert!(!g.has_loop(0) && g.has_loop(1));
    }

    #[test]
    fn h_wr_shape() {
        let g = h_wr();
        assert_eq!((g.n(), g.edge_count(), g.loop_count()), (3, 2, 3));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn knd_sizes() {
        let g = knd(6, 3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 18));
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(g.components().len(), 2);
        assert!(knd(6, 4).is_err());
        assert!(knd(33, 1).is_err());
    }

    #[test]
    fn shorthand() {
        assert_eq!(parse_named("k_dd:3").unwrap(), complete_bipartite(3).unwrap());
        assert_eq!(parse_named("knd:12,3").unwrap().n(), 24);
        assert_eq!(parse_named("kn:5").unwrap().edge_count(), 10);
        assert_eq!(parse_named("cycle:6").unwrap().edge_count(), 6);
        assert_eq!(parse_named("h_wr").unwrap(), h_wr());
        assert!(parse_named("petersen").is_err());
        assert!(parse_named("kn:a").is_err());
    }
}
