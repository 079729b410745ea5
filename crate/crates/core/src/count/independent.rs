//! Independent sets by branching on a vertex: leave it out, or take it and
//! delete its closed neighbourhood. A looped vertex is adjacent to itself and
//! is never taken.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::convolve;
use crate::error::{check_cap, Result};
use crate::graph::Graph;

pub const INDEPENDENT_MAX_COMPONENT: usize = 48;

/// Coefficient `t` is the number of independent sets of size `t`.
pub fn independent_set_polynomial(g: &Graph) -> Result<Vec<BigUint>> {
    let mut poly = vec![BigUint::from(1u32)];
    for comp in g.components() {
        check_cap("component size for independent sets", comp.count_ones() as usize, INDEPENDENT_MAX_COMPONENT)?;
        let mut memo = HashMap::new();
        let p: Vec<BigUint> = poly_in(g, comp, &mut memo).into_iter().map(BigUint::from).collect();
        poly = convolve(&poly, &p);
    }
    while poly.len() > 1 && poly.last().is_some_and(|c| *c == BigUint::default()) {
        poly.pop();
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
    let without = mask & !(1 << v);
    let mut p = poly_in(g, without, memo);
    if !g.has_loop(v) {
        let q = poly_in(g, without & !g.neighbors(v), memo);
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

pub fn independent_sets_of_size(g: &Graph, t: usize) -> Result<BigUint> {
    Ok(independent_set_polynomial(g)?.into_iter().nth(t).unwrap_or_default())
}

pub fn independent_sets_total(g: &Graph) -> Result<BigUint> {
    Ok(independent_set_polynomial(g)?.into_iter().sum())
}
