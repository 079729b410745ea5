//! The standard check registry.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{CheckClass, CheckEntry, CheckSpec, Observation};
use crate::bounds::{
    binom_sum_bound, bregman_bound, coin_lower_bounds, colorings_bip_bound, compare_bounds, compare_exact,
    edge_cover_number, embed_upper_bound, fractional_cover, fractional_independence, homs_bip_bound, hstar_build,
    independence_number, kahn_lovasz_bound, loomis_whitney_check, non_bip_colorings_closed, nonbip_order_bound,
    nonbip_q3_relaxed, parse_rational, RootProductBound, Verdict,
};
use crate::count::{
    colorings, cycle_cover_sums, embed_count, graph_has_triangle, hom_count, independent_set_polynomial,
    is_distinguishing, matching_polynomial, matching_polynomial_kdd, max_triangle_intersecting, min_distinguishing,
    perfect_matchings, permanent, MIN_DISTINGUISHING_MAX_N,
};
use crate::entropy::{
    check_all, check_conditional_shearer, check_shearer, chernoff_tail_check, parse_joint, random_family, random_joint,
    render_joint, PartialOrder, PropertyCheck,
};
use crate::error::{check_cap, Error, Result};
use crate::graph::{
    canonical_form, complete, enumerate_all_graphs, enumerate_bipartite_regular, enumerate_regular, h_wr, knd,
    parse_graph, parse_matrix, parse_named, render_graph, render_matrix, Graph, LatticeBody, ZeroOneMatrix,
};

pub fn standard_entries() -> Vec<CheckEntry> {
    use CheckClass::{Conjecture, Theorem};
    let e = |name, class, summary, family, eval| CheckEntry {
        name,
        class,
        summary,
        family,
        eval,
    };
    vec![
        e("bregman", Theorem, "perm(A) <= prod (r_i!)^(1/r_i) over 0-1 matrices", bregman_family, bregman_eval),
        e("kahn-lovasz", Theorem, "perfect matchings <= prod (d_v!)^(1/2d_v) over regular graphs", regular_all_family, kahn_lovasz_eval),
        e("thm6.1", Theorem, "c_q(G) <= c_q(K_{d,d})^(n/2d) over bipartite regular graphs", thm61_family, thm61_eval),
        e("thm6.2", Theorem, "hom(G,H) <= hom(K_{d,d},H)^(n/2d) over bipartite regular graphs", thm62_family, thm62_eval),
        e("thm6.3", Theorem, "hom(G,H) <= prod hom(K_{p(v),p(v)},H)^(1/d) over regular graphs and orders", thm63_family, thm63_eval),
        e("conj7.1", Conjecture, "all matchings of G <= those of K(n,d)", conj71_family, conj71_eval),
        e("umc", Conjecture, "matchings of size t in G <= those in K(n,d)", umc_family, umc_eval),
        e("conj-kq", Conjecture, "c_q(G) <= c_q(K_{d,d})^(n/2d) over all regular graphs", conj_kq_family, conj_kq_eval),
        e("conj-wr", Conjecture, "hom(G,H_WR) <= hom(K_{d+1},H_WR)^(n/(d+1))", regular_fixed_family, conj_wr_eval),
        e("conj-it", Conjecture, "i_t(G) <= i_t(K(n,2d)) for 2d | n", conj_it_family, conj_it_eval),
        e("alon-friedland", Theorem, "even cover sum = pm^2 and cover sum = perm(Adj)", all_graphs_family, alon_friedland_eval),
        e("loomis-whitney", Theorem, "|B| <= prod |B_j|^(1/(n-1)) over lattice bodies", loomis_whitney_family, loomis_whitney_eval),
        e("entropy-fuzz", Theorem, "entropy identities and inequalities on random distributions", joint_family, entropy_eval),
        e("shearer-fuzz", Theorem, "Shearer and conditional Shearer on random families", joint_family, shearer_eval),
        e("binom-sum", Theorem, "sum_{i <= an} C(n,i) <= 2^{H(a) n}", binom_sum_family, binom_sum_eval),
        e("chernoff", Theorem, "Pr(|X - n/2| >= c sigma) <= 2^(1 - c^2/2)", chernoff_family, chernoff_eval),
        e("coin", Theorem, "least distinguishing family size against its lower bounds", coin_family, coin_eval),
        e("triangle-family", Theorem, "triangle-intersecting families <= 2^(C(n,2)-2)", triangle_family, triangle_eval),
        e("embed-bound", Theorem, "embed(H,G) <= (2 l)^rho*(H), and the blow-up construction", embed_family, embed_eval),
        e("duality", Theorem, "alpha* = rho*, alpha <= alpha*, rho* <= rho", duality_family, duality_eval),
    ]
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::invalid(format!("instance is missing `{key}`")))
}

fn text<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| Error::invalid(format!("`{key}` must be a string")))
}

fn number(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::invalid(format!("`{key}` must be a nonnegative integer")))
}

fn graph(v: &Value) -> Result<Graph> {
    parse_graph(text(v, "graph")?)
}

fn target(v: &Value) -> Result<Graph> {
    parse_named(text(v, "target")?)
}

fn graph_key(g: &Graph) -> String {
    match canonical_form(g) {
        Ok(form) => form.iter().map(|b| format!("{b:02x}")).collect(),
        Err(_) => render_graph(g),
    }
}

/// `count <= bound`; tight instances are keyed by `key`.
fn against(input: &Value, count: &BigUint, bound: &RootProductBound, key: impl FnOnce() -> String) -> Result<Observation> {
    let cmp = compare_exact(count, bound)?;
    Ok(Observation {
        input: input.clone(),
        lhs: count.to_string(),
        rhs: serde_json::to_string(bound).expect("bounds serialize"),
        verdict: cmp.verdict,
        violation: cmp.verdict.violates(),
        tight: (cmp.verdict == Verdict::Equal).then(key),
        detail: String::new(),
    })
}

fn rng(spec: &CheckSpec) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(spec.seed)
}

fn graphs_json(gs: impl IntoIterator<Item = Graph>) -> Vec<Value> {
    gs.into_iter().map(|g| json!({ "graph": render_graph(&g) })).collect()
}

/// Every d-regular graph on `n <= max_n` vertices, for the given degree or
/// for every feasible degree.
fn regular_graphs(max_n: usize, d: Option<usize>) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let ds: Vec<usize> = match d {
            Some(d) => vec![d],
            None => (1..n).collect(),
        };
        for d in ds {
            if d < n && n * d % 2 == 0 {
                out.extend(enumerate_regular(n, d)?);
            }
        }
    }
    Ok(out)
}

/// Every d-regular bipartite graph with `d <= half <= max_half`.
fn bipartite_graphs(max_half: usize, d: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for half in d.max(1)..=max_half {
        out.extend(enumerate_bipartite_regular(half, d)?);
    }
    Ok(out)
}

fn degree_of(g: &Graph) -> Result<usize> {
    g.regular_degree().ok_or_else(|| Error::invalid("instance graph is not regular"))
}

// ---- permanents and matchings

fn bregman_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let p = &spec.params;
    let mut out = Vec::new();
    let n = p.n.unwrap_or(4);
    check_cap("order for exhaustive matrices", n, 4)?;
    for bits in 0u64..1 << (n * n) {
        let rows = (0..n).map(|i| bits >> (i * n) & ((1 << n) - 1)).collect();
        out.push(json!({ "matrix": render_matrix(&ZeroOneMatrix::from_rows(n, rows)?) }));
    }
    let max_n = p.max_n.unwrap_or(7);
    let mut r = rng(spec);
    for _ in 0..p.instances.unwrap_or(0) {
        let k = r.gen_range(1..=max_n);
        let density = r.gen_range(0.2..0.9);
        let rows = (0..k)
            .map(|_| (0..k).filter(|_| r.gen_bool(density)).fold(0u64, |acc, j| acc | 1 << j))
            .collect();
        out.push(json!({ "matrix": render_matrix(&ZeroOneMatrix::from_rows(k, rows)?) }));
    }
    Ok(out)
}

fn bregman_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let m = parse_matrix(text(v, "matrix")?)?;
    let count = permanent(&m)?;
    against(v, &count, &bregman_bound(&m.row_sums()), || render_matrix(&m))
}

fn regular_all_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    Ok(graphs_json(regular_graphs(spec.params.max_n.unwrap_or(8), spec.params.d)?))
}

fn kahn_lovasz_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let count = perfect_matchings(&g)?;
    against(v, &count, &kahn_lovasz_bound(&g.degrees()), || graph_key(&g))
}

// ---- homomorphisms on regular graphs

fn thm61_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let p = &spec.params;
    let qs = p.qs.clone().unwrap_or(vec![2, 3, 4]);
    let mut out = Vec::new();
    for g in bipartite_graphs(p.half_n.unwrap_or(6), p.d.unwrap_or(3))? {
        for &q in &qs {
            out.push(json!({ "graph": render_graph(&g), "q": q }));
        }
    }
    Ok(out)
}

fn thm61_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let q = number(v, "q")?;
    let d = degree_of(&g)?;
    let bound = colorings_bip_bound(g.n(), d, q)?;
    against(v, &colorings(&g, q)?, &bound, || format!("{} q={q}", graph_key(&g)))
}

fn targets(spec: &CheckSpec, default: &[&str]) -> Vec<String> {
    spec.params
        .targets
        .clone()
        .unwrap_or_else(|| default.iter().map(|s| s.to_string()).collect())
}

fn thm62_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let p = &spec.params;
    let hs = targets(spec, &["h_ind", "h_wr"]);
    let mut out = Vec::new();
    for g in bipartite_graphs(p.half_n.unwrap_or(6), p.d.unwrap_or(3))? {
        for h in &hs {
            parse_named(h)?;
            out.push(json!({ "graph": render_graph(&g), "target": h }));
        }
    }
    Ok(out)
}

fn thm62_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let h = target(v)?;
    let bound = homs_bip_bound(g.n(), degree_of(&g)?, &h)?;
    against(v, &hom_count(&g, &h)?, &bound, || format!("{} {}", graph_key(&g), text(v, "target").unwrap_or("")))
}

fn thm63_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let p = &spec.params;
    let hs = targets(spec, &["kn:3", "kn:4", "h_ind", "h_wr"]);
    let mut r = rng(spec);
    let mut out = Vec::new();
    for g in regular_graphs(p.max_n.unwrap_or(8), Some(p.d.unwrap_or(3)))? {
        let n = g.n();
        let mut orders: Vec<(&str, Vec<usize>)> = vec![("natural", (0..n).collect())];
        for _ in 0..p.orders.unwrap_or(10) {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(&mut r);
            orders.push(("random", o));
        }
        if let Some(left) = g.two_coloring() {
            let mut o: Vec<usize> = (0..n).filter(|&v| left >> v & 1 == 1).collect();
            o.extend((0..n).filter(|&v| left >> v & 1 == 0));
            orders.push(("classes", o));
        }
        for h in &hs {
            parse_named(h)?;
            for (kind, o) in &orders {
                out.push(json!({ "graph": render_graph(&g), "target": h, "order": o, "kind": kind }));
            }
        }
    }
    Ok(out)
}

fn is_triangle(h: &Graph) -> bool {
    h.n() == 3 && h.edge_count() == 3 && !h.has_loops()
}

fn thm63_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let h = target(v)?;
    let order: Vec<usize> = serde_json::from_value(field(v, "order")?.clone())
        .map_err(|e| Error::invalid(format!("bad order: {e}")))?;
    let bound = nonbip_order_bound(&g, &order, &h)?;
    let mut o = against(v, &hom_count(&g, &h)?, &bound, || {
        format!("{} {}", graph_key(&g), text(v, "target").unwrap_or(""))
    })?;
    let d = degree_of(&g)?;
    let mut problems = Vec::new();
    if v.get("kind").and_then(Value::as_str) == Some("classes") {
        let bip = homs_bip_bound(g.n(), d, &h)?;
        if compare_bounds(&bound, &bip)? != Verdict::Equal {
            problems.push("class order bound differs from the bipartite bound");
        }
    }
    if is_triangle(&h) {
        let relaxed = nonbip_q3_relaxed(&g, &order)?;
        if compare_bounds(&bound, &relaxed)?.violates() {
            problems.push("bound exceeds its relaxation 6 * 2^p");
        }
        if compare_bounds(&relaxed, &non_bip_colorings_closed(g.n(), d)?)? != Verdict::Equal {
            problems.push("relaxation differs from 2^(n/2) 6^(n/d)");
        }
    }
    if !problems.is_empty() {
        o.violation = true;
        o.detail = problems.join("; ");
    }
    Ok(o)
}

/// Bipartite (or, with `general`, all) d-regular graphs on `2 half`
/// vertices with `d | half`, for `d` given or `d <= 3`.
fn kdd_comparable(spec: &CheckSpec) -> Result<Vec<Graph>> {
    let p = &spec.params;
    let ds: Vec<usize> = match p.d {
        Some(d) => vec![d],
        None => (1..=3).collect(),
    };
    let max_half = p.half_n.unwrap_or(6);
    let mut out = Vec::new();
    for d in ds {
        for half in (d.max(1)..=max_half).filter(|h| h % d == 0) {
            if p.general.unwrap_or(false) {
                out.extend(enumerate_regular(2 * half, d)?);
            } else {
                out.extend(enumerate_bipartite_regular(half, d)?);
            }
        }
    }
    Ok(out)
}

fn conj71_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    Ok(graphs_json(kdd_comparable(spec)?))
}

fn conj71_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let d = degree_of(&g)?;
    let count: BigUint = matching_polynomial(&g)?.into_iter().sum();
    let extremal: BigUint = matching_polynomial_kdd(g.n() / 2, d)?.into_iter().sum();
    against(v, &count, &RootProductBound::integer(extremal), || graph_key(&g))
}

fn umc_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let t_max = spec.params.t_max.unwrap_or(4);
    let mut out = Vec::new();
    for g in kdd_comparable(spec)? {
        for t in 0..=t_max.min(g.n() / 2) {
            out.push(json!({ "graph": render_graph(&g), "t": t }));
        }
    }
    Ok(out)
}

fn umc_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let t = number(v, "t")?;
    let d = degree_of(&g)?;
    let count = matching_polynomial(&g)?.into_iter().nth(t).unwrap_or_default();
    let extremal = matching_polynomial_kdd(g.n() / 2, d)?.into_iter().nth(t).unwrap_or_default();
    against(v, &count, &RootProductBound::integer(extremal), || format!("{} t={t}", graph_key(&g)))
}

fn regular_fixed_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let p = &spec.params;
    Ok(graphs_json(regular_graphs(p.max_n.unwrap_or(8), Some(p.d.unwrap_or(3)))?))
}

fn conj_kq_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let qs = spec.params.qs.clone().unwrap_or(vec![3]);
    let mut out = Vec::new();
    for g in regular_fixed_family(spec)? {
        for &q in &qs {
            let mut g = g.clone();
            g["q"] = json!(q);
            out.push(g);
        }
    }
    Ok(out)
}

fn conj_kq_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let q = number(v, "q")?;
    let bound = colorings_bip_bound(g.n(), degree_of(&g)?, q)?;
    against(v, &colorings(&g, q)?, &bound, || format!("{} q={q}", graph_key(&g)))
}

fn conj_wr_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let d = degree_of(&g)?;
    let clique = hom_count(&complete(d + 1)?, &h_wr())?;
    let bound = RootProductBound::one().with_factor(clique.pow(g.n() as u32), d as u64 + 1)?;
    against(v, &hom_count(&g, &h_wr())?, &bound, || graph_key(&g))
}

fn conj_it_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let p = &spec.params;
    let d = p.d.unwrap_or(3);
    let t_max = p.t_max.unwrap_or(4);
    let mut out = Vec::new();
    for g in regular_graphs(p.max_n.unwrap_or(8), Some(d))? {
        if g.n() % (2 * d) != 0 || (!p.general.unwrap_or(true) && g.two_coloring().is_none()) {
            continue;
        }
        for t in 0..=t_max.min(g.n()) {
            out.push(json!({ "graph": render_graph(&g), "t": t }));
        }
    }
    Ok(out)
}

fn conj_it_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let t = number(v, "t")?;
    let d = degree_of(&g)?;
    let count = independent_set_polynomial(&g)?.into_iter().nth(t).unwrap_or_default();
    let extremal = independent_set_polynomial(&knd(g.n() / 2, d)?)?.into_iter().nth(t).unwrap_or_default();
    against(v, &count, &RootProductBound::integer(extremal), || format!("{} t={t}", graph_key(&g)))
}

// ---- identities

fn all_graphs_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for n in 1..=spec.params.max_n.unwrap_or(8) {
        out.extend(graphs_json(enumerate_all_graphs(n)?));
    }
    Ok(out)
}

fn identity(input: &Value, lhs: String, rhs: String, equal: bool, detail: String) -> Observation {
    Observation {
        input: input.clone(),
        lhs,
        rhs,
        verdict: if equal { Verdict::Equal } else { Verdict::AboveStrict },
        violation: !equal,
        tight: None,
        detail,
    }
}

fn alon_friedland_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let s = cycle_cover_sums(&g)?;
    let pm = perfect_matchings(&g)?;
    let perm = permanent(&g.adjacency_matrix())?;
    let square = &pm * &pm;
    let equal = s.even == square && s.all == perm;
    Ok(identity(v, format!("{},{}", s.even, s.all), format!("{square},{perm}"), equal, String::new()))
}

fn duality_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for n in 2..=spec.params.max_n.unwrap_or(6) {
        out.extend(graphs_json(enumerate_all_graphs(n)?.into_iter().filter(|g| g.is_connected())));
    }
    Ok(out)
}

fn duality_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let g = graph(v)?;
    let rho_star = fractional_cover(&g)?.objective;
    let alpha_star = fractional_independence(&g)?.objective;
    let rho = edge_cover_number(&g)?.ok_or_else(|| Error::invalid("graph has an isolated vertex"))?;
    let alpha = independence_number(&g)?;
    let mut problems = Vec::new();
    if BigRational::from_integer(alpha.into()) > alpha_star {
        problems.push(format!("alpha = {alpha} exceeds alpha* = {alpha_star}"));
    }
    if rho_star > BigRational::from_integer(rho.into()) {
        problems.push(format!("rho* = {rho_star} exceeds rho = {rho}"));
    }
    let equal = alpha_star == rho_star;
    let mut o = identity(v, alpha_star.to_string(), rho_star.to_string(), equal && problems.is_empty(), problems.join("; "));
    o.verdict = match alpha_star.cmp(&rho_star) {
        std::cmp::Ordering::Less => Verdict::BelowStrict,
        std::cmp::Ordering::Equal => Verdict::Equal,
        std::cmp::Ordering::Greater => Verdict::AboveStrict,
    };
    Ok(o)
}

// ---- bodies and families

fn loomis_whitney_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let mut r = rng(spec);
    let mut out = Vec::new();
    for dim in 2..=4usize {
        let sides = |k: usize| -> Vec<Vec<usize>> {
            let mut all = vec![vec![]];
            for _ in 0..k {
                all = all.into_iter().flat_map(|s| (1..=3).map(move |x| [s.clone(), vec![x]].concat())).collect();
            }
            all
        };
        for s in sides(dim) {
            out.push(json!({ "body": LatticeBody::cuboid(&s)?.render() }));
        }
    }
    for _ in 0..spec.params.instances.unwrap_or(1000) {
        let dim = r.gen_range(2..=4usize);
        let side = r.gen_range(2..=8i64);
        let room = (side as usize).pow(dim as u32);
        let want = r.gen_range(1..=room.min(200));
        let mut cells = std::collections::BTreeSet::new();
        while cells.len() < want {
            cells.insert((0..dim).map(|_| r.gen_range(0..side)).collect::<Vec<i64>>());
        }
        out.push(json!({ "body": LatticeBody::new(dim, cells)?.render() }));
    }
    Ok(out)
}

fn loomis_whitney_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let b = LatticeBody::parse(text(v, "body")?)?;
    let (vol, bound, _) = loomis_whitney_check(&b)?;
    against(v, &vol, &bound, || b.render())
}

fn joint_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let p = &spec.params;
    let max_arity = p.max_n.unwrap_or(4);
    check_cap("arity for random distributions", max_arity, 8)?;
    let max_range = p.max_range.unwrap_or(4);
    let mut r = rng(spec);
    let mut out = Vec::new();
    for _ in 0..p.instances.unwrap_or(10_000) {
        let arity = r.gen_range(1..=max_arity);
        let j = random_joint(&mut r, arity, max_range);
        out.push(json!({ "joint": render_joint(&j), "seed": r.gen::<u64>() }));
    }
    Ok(out)
}

fn property_observation(v: &Value, checks: Vec<PropertyCheck>, tol: f64) -> Observation {
    let worst = checks.iter().map(|c| c.deviation).fold(f64::NEG_INFINITY, f64::max);
    let failing: Vec<&str> = checks.iter().filter(|c| !c.holds).map(|c| c.property.as_str()).collect();
    Observation {
        input: v.clone(),
        lhs: format!("{worst:e}"),
        rhs: format!("{tol:e}"),
        verdict: if failing.is_empty() { Verdict::BelowStrict } else { Verdict::AboveStrict },
        violation: !failing.is_empty(),
        tight: None,
        detail: failing.join("; "),
    }
}

fn entropy_eval(spec: &CheckSpec, v: &Value) -> Result<Observation> {
    let j = parse_joint(text(v, "joint")?)?;
    let mut r = ChaCha8Rng::seed_from_u64(field(v, "seed")?.as_u64().unwrap_or(0));
    let tol = spec.params.tolerance();
    Ok(property_observation(v, check_all(&j, &mut r, tol), tol))
}

fn shearer_eval(spec: &CheckSpec, v: &Value) -> Result<Observation> {
    let j = parse_joint(text(v, "joint")?)?;
    let mut r = ChaCha8Rng::seed_from_u64(field(v, "seed")?.as_u64().unwrap_or(0));
    let tol = spec.params.tolerance();
    let n = j.arity();
    let mut checks = Vec::new();
    for _ in 0..4 {
        let f = random_family(&mut r, n);
        checks.push(check_shearer(&j, &f, tol)?);
        let density = r.gen_range(0.0..1.0);
        let ord = PartialOrder::random(&mut r, n, density)?;
        checks.push(check_conditional_shearer(&j, &f, &ord, tol)?);
    }
    Ok(property_observation(v, checks, tol))
}

fn binom_sum_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let mut out = Vec::new();
    for n in 1..=spec.params.max_n.unwrap_or(60) {
        for k in 1..=10 {
            out.push(json!({ "n": n, "alpha": format!("{k}/20") }));
        }
    }
    Ok(out)
}

fn binom_sum_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let c = binom_sum_bound(number(v, "n")?, &parse_rational(text(v, "alpha")?)?)?;
    Ok(Observation {
        input: v.clone(),
        lhs: c.lhs,
        rhs: format!("2^{}", c.log2_bound),
        verdict: if c.holds { Verdict::BelowStrict } else { Verdict::AboveStrict },
        violation: !c.holds,
        tight: None,
        detail: if c.certified { String::new() } else { "within rounding band".into() },
    })
}

fn chernoff_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let ns = spec.params.sizes.clone().unwrap_or(vec![16, 64, 256, 1024]);
    let mut out = Vec::new();
    for n in ns {
        for c in 0..=4 {
            out.push(json!({ "n": n, "c": c }));
        }
    }
    Ok(out)
}

fn chernoff_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let c = field(v, "c")?.as_f64().ok_or_else(|| Error::invalid("`c` must be a number"))?;
    let t = chernoff_tail_check(number(v, "n")?, c)?;
    Ok(Observation {
        input: v.clone(),
        lhs: format!("{}/2^{}", t.tail_numerator, t.n),
        rhs: format!("2^(1-{c}^2/2)"),
        verdict: if t.holds { Verdict::BelowStrict } else { Verdict::AboveStrict },
        violation: !t.holds,
        tight: None,
        detail: if t.certified { String::new() } else { "decided with a float margin".into() },
    })
}

fn coin_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let max_n = spec.params.max_n.unwrap_or(5);
    check_cap("ground set size for the exhaustive search", max_n, MIN_DISTINGUISHING_MAX_N)?;
    Ok((1..=max_n).map(|n| json!({ "n": n })).collect())
}

fn coin_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let n = number(v, "n")?;
    let (f, family) = min_distinguishing(n)?;
    let (simple, refined) = if n >= 2 { coin_lower_bounds(n)? } else { (1.0, 0.0) };
    let lower = simple.max(refined);
    let mut problems = Vec::new();
    if !is_distinguishing(&family)? {
        problems.push("returned family does not distinguish".to_string());
    }
    if (f as f64) < lower {
        problems.push(format!("f({n}) = {f} is below {lower}"));
    }
    Ok(Observation {
        input: v.clone(),
        lhs: format!("{lower}"),
        rhs: f.to_string(),
        verdict: if (f as f64) > lower { Verdict::BelowStrict } else if (f as f64) == lower { Verdict::Equal } else { Verdict::AboveStrict },
        violation: !problems.is_empty(),
        tight: None,
        detail: problems.join("; "),
    })
}

fn triangle_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let max_n = spec.params.max_n.unwrap_or(4);
    check_cap("vertices for triangle families", max_n, 4)?;
    Ok((3..=max_n).map(|n| json!({ "n": n })).collect())
}

fn triangle_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let n = number(v, "n")?;
    let (size, fam) = max_triangle_intersecting(n)?;
    let pairs = n * (n - 1) / 2;
    let bound = BigUint::one() << (pairs - 2);
    let sharp = BigUint::one() << (pairs - 3);
    let mut o = against(v, &BigUint::from(size), &RootProductBound::integer(bound), String::new)?;
    if !fam.iter().all(|&a| fam.iter().all(|&b| graph_has_triangle(n, a & b))) {
        o.violation = true;
        o.detail = "family is not triangle-intersecting".into();
    } else if BigUint::from(size) == sharp {
        o.detail = "equals 2^(C(n,2)-3)".into();
    } else {
        o.detail = "differs from 2^(C(n,2)-3)".into();
    }
    Ok(o)
}

// ---- embeddings

fn embed_family(spec: &CheckSpec) -> Result<Vec<Value>> {
    let p = &spec.params;
    let hs = targets(spec, &["kn:2", "kn:3", "cycle:4", "cycle:5", "kn:4", "path:4"]);
    let max_edges = p.max_edges.unwrap_or(30);
    let mut r = rng(spec);
    let mut out = Vec::new();
    for _ in 0..p.instances.unwrap_or(100) {
        let n = r.gen_range(4..=12usize);
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        pairs.shuffle(&mut r);
        let ell = r.gen_range(1..=max_edges.min(pairs.len()));
        let g = Graph::from_edges(n, &pairs[..ell])?;
        for h in &hs {
            out.push(json!({ "graph": render_graph(&g), "target": h }));
        }
    }
    for h in &hs {
        let m = parse_named(h)?.edge_count();
        for ell in m.max(1)..=p.max_ell.unwrap_or(48) {
            out.push(json!({ "target": h, "ell": ell }));
        }
    }
    Ok(out)
}

fn embed_eval(_: &CheckSpec, v: &Value) -> Result<Observation> {
    let h = target(v)?;
    if v.get("ell").is_some() {
        let ell = number(v, "ell")?;
        let s = hstar_build(&h, ell)?;
        let found = embed_count(&h, &s.graph)?;
        let mut o = against(v, &s.guaranteed, &RootProductBound::integer(found.clone()), String::new)?;
        o.tight = None;
        if s.graph.edge_count() > ell {
            o.violation = true;
            o.detail = format!("blow-up has {} > {ell} edges", s.graph.edge_count());
        }
        if found.is_zero() && !s.guaranteed.is_zero() {
            o.violation = true;
        }
        return Ok(o);
    }
    let g = graph(v)?;
    let bound = embed_upper_bound(&h, g.edge_count())?;
    against(v, &embed_count(&h, &g)?, &bound, || format!("{} {}", graph_key(&g), text(v, "target").unwrap_or("")))
}
