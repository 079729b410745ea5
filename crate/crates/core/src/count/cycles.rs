//! Vertex covers by isolated edges and disjoint cycles.
//!
//! A cover `S` uses some edges as isolated 2-cycles and some cycles of length
//! at least 3; `c(S)` is the number of the latter. `all` sums `2^c(S)` over
//! every cover, `even` over covers whose cycles all have even length.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::graph::{bits, Graph};

pub const CYCLE_COVER_MAX_N: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCoverSums {
    #[serde(serialize_with = "crate::count::decimal")]
    pub even: BigUint,
    #[serde(serialize_with = "crate::count::decimal")]
    pub all: BigUint,
}

pub fn cycle_cover_sums(g: &Graph) -> Result<CycleCoverSums> {
    check_cap("vertex count for cycle covers", g.n(), CYCLE_COVER_MAX_N)?;
    if g.has_loops() {
        return Err(Error::invalid("cycle covers are defined on loop-free graphs"));
    }
    let mut memo = HashMap::new();
    let (even, all) = covers(g, g.vertex_mask(), &mut memo);
    Ok(CycleCoverSums {
        even: even.into(),
        all: all.into(),
    })
}

/// (even sum, all sum) over covers of the vertices in `mask`.
fn covers(g: &Graph, mask: u64, memo: &mut HashMap<u64, (u128, u128)>) -> (u128, u128) {
    if mask == 0 {
        return (1, 1);
    }
    if let Some(&r) = memo.get(&mask) {
        return r;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let (mut even, mut all) = (0u128, 0u128);
    for u in bits(g.neighbors(v) & rest) {
        let (e, a) = covers(g, rest & !(1 << u), memo);
        even += e;
        all += a;
    }
    // cycles through v, each traced once: first step smaller than last
    let mut ends: Vec<(u64, usize)> = Vec::new();
    for a in bits(g.neighbors(v) & rest) {
        let mut path = vec![v, a];
        extend(g, rest, 1 << v | 1 << a, &mut path, &mut ends);
    }
    for (used, len) in ends {
        let (e, a) = covers(g, mask & !used, memo);
        all += 2 * a;
        if len % 2 == 0 {
            even += 2 * e;
        }
    }
    memo.insert(mask, (even, all));
    (even, all)
}

fn extend(g: &Graph, avail: u64, used: u64, path: &mut Vec<usize>, out: &mut Vec<(u64, usize)>) {
    let start = path[0];
    let last = *path.last().expect("non-empty");
    if path.len() >= 3 && g.has_edge(last, start) && path[1] < last {
        out.push((used, path.len()));
    }
    for w in bits(g.neighbors(last) & avail & !used) {
        path.push(w);
        extend(g, avail, used | 1 << w, path, out);
        path.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{perfect_matchings, permanent};
    use crate::graph::{complete, cycle, knd};

    #[test]
    fn examples() {
        let k4 = cycle_cover_sums(&complete(4).unwrap()).unwrap();
        assert_eq!(k4.even, 9u32.into());
        assert_eq!(k4.all, 9u32.into());
        let c5 = cycle_cover_sums(&cycle(5).unwrap()).unwrap();
        assert_eq!(c5.even, 0u32.into());
        assert_eq!(c5.all, 2u32.into());
        assert!(cycle_cover_sums(&Graph::new(15).unwrap()).is_err());
    }

    #[test]
    fn identities_on_small_graphs() {
        for g in [complete(6).unwrap(), knd(6, 3).unwrap(), cycle(8).unwrap(), cycle(7).unwrap()] {
            let s = cycle_cover_sums(&g).unwrap();
            let pm = perfect_matchings(&g).unwrap();
            assert_eq!(s.even, &pm * &pm);
            assert_eq!(s.all, permanent(&g.adjacency_matrix()).unwrap());
        }
    }
}
