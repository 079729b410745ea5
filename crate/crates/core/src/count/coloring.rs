//! Proper q-colourings. Colours are introduced in order of first use, so
//! the search enumerates partitions of the vertices into independent classes;
//! a partition with `k` classes stands for `q (q-1) .. (q-k+1)` colourings.

use num_bigint::BigUint;

use crate::error::Result;
use crate::graph::{bits, Graph};

pub fn colorings(g: &Graph, q: usize) -> Result<BigUint> {
    if g.has_loops() {
        return Ok(BigUint::default());
    }
    let mut total = BigUint::from(1u32);
    for comp in g.components() {
        let order = bfs_order(g, comp);
        let mut by_classes = vec![0u128; order.len().min(q) + 1];
        let mut classes = Vec::new();
        partitions(g, &order, 0, &mut classes, q, &mut by_classes);
        let mut c = BigUint::default();
        for (k, &count) in by_classes.iter().enumerate() {
            if count > 0 {
                let falling: BigUint = (0..k).fold(BigUint::from(1u32), |acc, i| acc * (q - i));
                c += falling * count;
            }
        }
        total *= c;
    }
    Ok(total)
}

fn partitions(g: &Graph, order: &[usize], i: usize, classes: &mut Vec<u64>, q: usize, out: &mut [u128]) {
    if i == order.len() {
        out[classes.len()] += 1;
        return;
    }
    let v = order[i];
    let nb = g.neighbors(v);
    for c in 0..classes.len() {
        if classes[c] & nb == 0 {
            classes[c] |= 1 << v;
            partitions(g, order, i + 1, classes, q, out);
            classes[c] &= !(1 << v);
        }
    }
    if classes.len() < q {
        classes.push(1 << v);
        partitions(g, order, i + 1, classes, q, out);
        classes.pop();
    }
}

/// Breadth-first order from the lowest vertex, so each vertex after the
/// first has an earlier neighbour.
pub(crate) fn bfs_order(g: &Graph, comp: u64) -> Vec<usize> {
    let mut order = Vec::with_capacity(comp.count_ones() as usize);
    let mut seen = 0u64;
    let mut head = 0;
    for s in bits(comp) {
        if seen >> s & 1 == 1 {
            continue;
        }
        seen |= 1 << s;
        order.push(s);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in bits(g.neighbors(v) & comp & !seen) {
                seen |= 1 << w;
                order.push(w);
            }
        }
    }
    order
}
