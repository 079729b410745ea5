//! The individual bounds: permanents, binomial sums, coin weighing,
//! projections, embeddings and homomorphism counts.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::lp::{fractional_cover, fractional_independence};
use super::{compare_exact, Comparison, RootProductBound};
use crate::count::{body_volume_and_projections, colorings_kdd_closed, hom_kdd_closed, independent_set_polynomial};
use crate::entropy::{binary_entropy, BINOMIAL_ENTROPY_C};
use crate::error::{check_cap, Error, Result};
use crate::graph::{bits, Graph, LatticeBody};
use crate::numeric::{binomial_row, factorial};

type Q = BigRational;

/// `prod_i (d_i!)^(1/d_i)` over the row sums.
pub fn bregman_bound(row_sums: &[usize]) -> RootProductBound {
    factorial_roots(row_sums, 1)
}

/// `prod_v (d_v!)^(1/(2 d_v))` over the degrees.
pub fn kahn_lovasz_bound(degrees: &[usize]) -> RootProductBound {
    factorial_roots(degrees, 2)
}

fn factorial_roots(ds: &[usize], k: u64) -> RootProductBound {
    let mut b = RootProductBound::one();
    for &d in ds {
        if d > 1 {
            b = b.with_factor(factorial(d), k * d as u64).expect("valid factor");
        }
    }
    b
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinomSumCheck {
    pub n: usize,
    pub alpha: String,
    /// `sum_{i <= alpha n} C(n, i)`, exact.
    pub lhs: String,
    /// `H(alpha) n`.
    pub log2_bound: f64,
    pub holds: bool,
    /// False when the sum falls inside the rounding band around the bound;
    /// `holds` is then reported true.
    pub certified: bool,
}

/// `sum_{i <= alpha n} C(n, i) <= 2^{H(alpha) n}` with an exact left side.
pub fn binom_sum_bound(n: usize, alpha: &Q) -> Result<BinomSumCheck> {
    let half = Q::new(1.into(), 2.into());
    if *alpha <= Q::zero() || *alpha > half {
        return Err(Error::invalid(format!("alpha must lie in (0, 1/2], got {alpha}")));
    }
    let top = (alpha * Q::from_integer(n.into())).floor().to_integer();
    let top = top.to_usize().expect("at most n");
    let lhs: BigUint = binomial_row(n).into_iter().take(top + 1).sum();
    let x = binary_entropy(super::rational_f64(alpha))? * n as f64;
    let (down, up) = pow2_bracket(x);
    let (holds, certified) = if lhs > up {
        (false, true)
    } else {
        (true, lhs <= down)
    };
    Ok(BinomSumCheck {
        n,
        alpha: alpha.to_string(),
        lhs: lhs.to_string(),
        log2_bound: x,
        holds,
        certified,
    })
}

/// Integers `lo <= 2^x <= hi`, widened to absorb floating-point error in
/// `x` and in `exp2`.
pub(crate) fn pow2_bracket(x: f64) -> (BigUint, BigUint) {
    let eps = 1e-12 * x.abs().max(1.0);
    let bracket = |y: f64, up: bool| -> BigUint {
        if y < 0.0 {
            return if up { BigUint::one() } else { BigUint::zero() };
        }
        let k = y.floor();
        let f = (y - k).exp2() * 2f64.powi(52);
        let k = k as u64;
        let mant = if up { f.ceil() as u64 + 1 } else { f.floor() as u64 - 1 };
        let m = BigUint::from(mant);
        if k >= 52 {
            m << (k - 52)
        } else if up {
            (m + ((BigUint::one() << (52 - k)) - 1u32)) >> (52 - k)
        } else {
            m >> (52 - k)
        }
    };
    (bracket(x - eps, false), bracket(x + eps, true))
}

/// `(n / log2(n+1), n / ((1/2) log2 n + C))`: the plain counting bound on
/// a distinguishing family, and the refined one through the binomial
/// entropy constant.
pub fn coin_lower_bounds(n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::invalid("coin weighing bounds need n >= 2"));
    }
    let n = n as f64;
    Ok((n / (n + 1.0).log2(), n / (0.5 * n.log2() + BINOMIAL_ENTROPY_C)))
}

/// `|B| <= prod_j |B_j|^(1/(n-1))`.
pub fn loomis_whitney_check(b: &LatticeBody) -> Result<(BigUint, RootProductBound, Comparison)> {
    if b.dim() < 2 {
        return Err(Error::invalid("projection bound needs dimension at least 2"));
    }
    let (vol, projs) = body_volume_and_projections(b);
    let root = b.dim() as u64 - 1;
    let mut bound = RootProductBound::one();
    for p in projs {
        if p.is_zero() {
            bound = RootProductBound::zero();
            break;
        }
        bound = bound.with_factor(p, root)?;
    }
    let cmp = compare_exact(&vol, &bound)?;
    Ok((vol, bound, cmp))
}

/// `(2 ell)^{rho*(h)}` for a host with `ell` edges.
pub fn embed_upper_bound(h: &Graph, ell: usize) -> Result<RootProductBound> {
    if ell == 0 {
        return Err(Error::invalid("ell must be at least 1"));
    }
    let rho = fractional_cover(h)?.objective;
    let p = rho.numer().to_u32().ok_or_else(|| Error::invalid("cover number too large"))?;
    let q = rho.denom().to_u64().ok_or_else(|| Error::invalid("cover number too large"))?;
    RootProductBound::one().with_factor(BigUint::from(2 * ell).pow(p), q)
}

#[derive(Clone, Debug)]
pub struct HStar {
    pub graph: Graph,
    /// Blow-up class size for each vertex of `h`.
    pub sizes: Vec<usize>,
    pub psi: Vec<Q>,
    /// `prod_v sizes[v]`: one embedding per choice of a vertex in each class.
    pub guaranteed: BigUint,
}

/// Largest host the blow-up may produce.
pub const HSTAR_MAX_VERTICES: usize = 64;
/// Largest `h` whose optimal packing is averaged over automorphisms.
const AUTOMORPHISM_AVERAGE_MAX: usize = 10;

/// Blow-up of `h` with class sizes `floor((ell/|E(h)|)^{psi*(v)})` and
/// complete bipartite graphs between the classes of adjacent vertices.
pub fn hstar_build(h: &Graph, ell: usize) -> Result<HStar> {
    let m = h.edge_count();
    if ell == 0 || ell < m {
        return Err(Error::invalid(format!("ell = {ell} must be at least max(1, |E(h)|) = {}", m.max(1))));
    }
    let mut psi = fractional_independence(h)?.weights;
    if h.n() <= AUTOMORPHISM_AVERAGE_MAX {
        psi = average_over_automorphisms(h, &psi);
    }
    let m = m.max(1);
    let mut sizes = Vec::with_capacity(h.n());
    for w in &psi {
        let a = w.numer().to_u32().expect("weights lie in [0, 1]");
        let b = w.denom().to_u32().ok_or_else(|| Error::invalid("packing weight denominator too large"))?;
        let ratio = BigUint::from(ell).pow(a) / BigUint::from(m).pow(a);
        let s = ratio.nth_root(b).to_usize().expect("at most ell");
        sizes.push(s);
    }
    let total: usize = sizes.iter().sum();
    check_cap("blow-up vertex count", total, HSTAR_MAX_VERTICES)?;
    let mut start = vec![0usize; h.n() + 1];
    for v in 0..h.n() {
        start[v + 1] = start[v] + sizes[v];
    }
    let mut graph = Graph::new(total)?;
    for (u, v) in h.edges() {
        for x in start[u]..start[u + 1] {
            for y in start[v]..start[v + 1] {
                graph.add_edge(x, y)?;
            }
        }
    }
    if graph.edge_count() > ell {
        return Err(Error::invalid("blow-up exceeded the edge budget"));
    }
    let guaranteed = sizes.iter().fold(BigUint::one(), |acc, &s| acc * s);
    Ok(HStar {
        graph,
        sizes,
        psi,
        guaranteed,
    })
}

/// Mean of the weight vector over all automorphisms; still optimal since
/// the feasible region and objective are invariant.
fn average_over_automorphisms(h: &Graph, w: &[Q]) -> Vec<Q> {
    let autos = automorphisms(h);
    let k = Q::from_integer(autos.len().into());
    (0..h.n())
        .map(|v| autos.iter().map(|p| w[p[v]].clone()).sum::<Q>() / &k)
        .collect()
}

fn automorphisms(h: &Graph) -> Vec<Vec<usize>> {
    fn rec(h: &Graph, v: usize, map: &mut Vec<usize>, used: u64, out: &mut Vec<Vec<usize>>) {
        let n = h.n();
        if v == n {
            out.push(map.clone());
            return;
        }
        for x in 0..n {
            if used >> x & 1 == 1 || h.degree(x) != h.degree(v) || h.has_loop(x) != h.has_loop(v) {
                continue;
            }
            if (0..v).all(|u| h.has_edge(u, v) == h.has_edge(map[u], x)) {
                map.push(x);
                rec(h, v + 1, map, used | 1 << x, out);
                map.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(h, 0, &mut Vec::with_capacity(h.n()), 0, &mut out);
    out
}

fn power_factor(base: BigUint, exp: usize, root: u64) -> Result<RootProductBound> {
    if base.is_zero() {
        return Ok(if exp == 0 { RootProductBound::one() } else { RootProductBound::zero() });
    }
    RootProductBound::one().with_factor(base.pow(exp as u32), root)
}

/// `c_q(K_{d,d})^(n/2d)`.
pub fn colorings_bip_bound(n: usize, d: usize, q: usize) -> Result<RootProductBound> {
    power_factor(colorings_kdd_closed(q, d)?, n, 2 * d as u64)
}

/// `hom(K_{d,d}, h)^(n/2d)`.
pub fn homs_bip_bound(n: usize, d: usize, h: &Graph) -> Result<RootProductBound> {
    power_factor(hom_kdd_closed(h, d)?, n, 2 * d as u64)
}

/// `p(v)`: neighbours of `v` placed before it. `order` lists the vertices
/// from first to last.
pub fn order_p_values(g: &Graph, order: &[usize]) -> Result<Vec<usize>> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::invalid("order is not a permutation of the vertices"));
        }
        pos[v] = i;
    }
    if order.len() != n {
        return Err(Error::invalid("order is not a permutation of the vertices"));
    }
    Ok((0..n).map(|v| bits(g.neighbors(v)).filter(|&w| pos[w] < pos[v]).count()).collect())
}

fn regular_degree(g: &Graph) -> Result<usize> {
    match g.regular_degree() {
        Some(d) if d >= 1 && !g.has_loops() => Ok(d),
        _ => Err(Error::invalid("graph must be loop-free and d-regular with d >= 1")),
    }
}

/// `prod_v hom(K_{p(v),p(v)}, h)^(1/d)`, with `hom(K_{0,0}, h) = 1`.
pub fn nonbip_order_bound(g: &Graph, order: &[usize], h: &Graph) -> Result<RootProductBound> {
    let d = regular_degree(g)?;
    let p = order_p_values(g, order)?;
    let mut b = RootProductBound::one();
    for k in 1..=d {
        let mult = p.iter().filter(|&&x| x == k).count();
        if mult > 0 {
            b = b.times(&power_factor(hom_kdd_closed(h, k)?, mult, d as u64)?);
        }
    }
    Ok(b)
}

/// `prod_v (6 * 2^p(v))^(1/d)`: each factor `c_3(K_{p,p})` replaced by
/// its upper estimate `6 * 2^p`.
pub fn nonbip_q3_relaxed(g: &Graph, order: &[usize]) -> Result<RootProductBound> {
    let d = regular_degree(g)? as u64;
    let mut b = RootProductBound::one();
    for p in order_p_values(g, order)? {
        b = b.with_factor(BigUint::from(6u32) << p, d)?;
    }
    Ok(b)
}

/// `2^(n/2) 6^(n/d)`.
pub fn non_bip_colorings_closed(n: usize, d: usize) -> Result<RootProductBound> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    RootProductBound::one()
        .with_factor(BigUint::one() << n, 2)?
        .with_factor(BigUint::from(6u32).pow(n as u32), d as u64)
}

/// `n (alpha log2 d + 2 H(alpha) + alpha log2(alpha / e))`.
pub fn matching_asymptotic_reference(n: usize, d: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) || d < 2 {
        return Err(Error::invalid("need 0 < alpha < 1 and d >= 2"));
    }
    let a = alpha;
    let e = std::f64::consts::E;
    Ok(n as f64 * (a * (d as f64).log2() + 2.0 * binary_entropy(a)? + a * (a / e).log2()))
}

/// Fewest edges covering every vertex, by search over edge subsets in
/// increasing size. None when some vertex is isolated.
pub fn edge_cover_number(h: &Graph) -> Result<Option<usize>> {
    let edges = h.edges();
    check_cap("edge count for exhaustive cover", edges.len(), 24)?;
    let target = h.vertex_mask();
    let masks: Vec<u64> = edges.iter().map(|&(a, b)| 1u64 << a | 1 << b).collect();
    let mut best: Option<usize> = None;
    for s in 0u32..1 << edges.len() {
        let size = s.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let covered = (0..edges.len()).filter(|&i| s >> i & 1 == 1).fold(0u64, |acc, i| acc | masks[i]);
        if covered == target {
            best = Some(size);
        }
    }
    Ok(best)
}

/// Size of a largest independent set.
pub fn independence_number(h: &Graph) -> Result<usize> {
    Ok(independent_set_polynomial(h)?.len() - 1)
}
