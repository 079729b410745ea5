//! Closed forms on `K_{d,d}` and its disjoint unions `K(n, d)`.
//!
//! A homomorphism `K_{d,d} -> H` is an assignment of the `d` left vertices
//! followed, for each right vertex, by a choice among the common neighbours
//! of the left image set `S`. Summing the multinomial over all colour
//! profiles with support exactly `S` gives `Surj(d, |S|)`, so
//! `hom(K_{d,d}, H) = sum_S Surj(d, |S|) * |N(S)|^d`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::convolve;
use crate::error::{check_cap, Error, Result};
use crate::graph::{full_mask, Graph};
use crate::numeric::{binomial, factorial, surjections};

/// Largest target graph for the subset sum.
pub const HOM_CLOSED_MAX_TARGET: usize = 24;

pub fn hom_kdd_closed(h: &Graph, d: usize) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    check_cap("target size for the closed hom form", h.n(), HOM_CLOSED_MAX_TARGET)?;
    let m = h.n();
    let surj: Vec<BigUint> = (0..=m.min(d)).map(|a| surjections(d, a)).collect();
    let nh: Vec<u64> = (0..m).map(|x| h.neighbors_with_loop(x)).collect();
    let mut total = BigUint::zero();
    // common[S] built incrementally from S minus its lowest element
    let mut common = vec![full_mask(m); 1 << m];
    for s in 1usize..1 << m {
        let low = s.trailing_zeros() as usize;
        common[s] = common[s & (s - 1)] & nh[low];
        let size = s.count_ones() as usize;
        if size > d || common[s] == 0 {
            continue;
        }
        total += &surj[size] * BigUint::from(common[s].count_ones()).pow(d as u32);
    }
    Ok(total)
}

/// `c_q(K_{d,d}) = sum_{a >= 1} C(q, a) Surj(d, a) (q - a)^d`.
pub fn colorings_kdd_closed(q: usize, d: usize) -> Result<BigUint> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let mut total = BigUint::zero();
    for a in 1..=q.min(d) {
        total += binomial(q, a) * surjections(d, a) * BigUint::from(q - a).pow(d as u32);
    }
    Ok(total)
}

/// Matching polynomial of `K(n, d)`: the `n/d`-th power of
/// `sum_a C(d, a)^2 a! x^a`.
pub fn matching_polynomial_kdd(n: usize, d: usize) -> Result<Vec<BigUint>> {
    if d == 0 || n % d != 0 {
        return Err(Error::invalid(format!("d = {d} does not divide n = {n}")));
    }
    let one: Vec<BigUint> = (0..=d).map(|a| binomial(d, a).pow(2) * factorial(a)).collect();
    let mut poly = vec![BigUint::one()];
    for _ in 0..n / d {
        poly = convolve(&poly, &one);
    }
    Ok(poly)
}

pub fn matchings_kdd_formula(n: usize, d: usize, t: usize) -> Result<BigUint> {
    Ok(matching_polynomial_kdd(n, d)?.into_iter().nth(t).unwrap_or_default())
}
