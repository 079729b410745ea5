//! Exact-rational simplex (two phases, Bland's rule) and the fractional
//! edge cover / vertex packing programs of a graph.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::graph::Graph;

pub const LP_MAX_VARIABLES: usize = 256;

type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub sense: Sense,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Q>,
    pub value: Q,
}

/// Maximizes `c.x` over `x >= 0` subject to the constraints.
pub fn maximize(c: &[Q], constraints: &[Constraint]) -> Result<LpSolution> {
    let n = c.len();
    check_cap("linear program variables", n, LP_MAX_VARIABLES)?;
    if constraints.iter().any(|k| k.coeffs.len() != n) {
        return Err(Error::invalid("constraint width differs from the objective"));
    }
    let rows: Vec<Constraint> = constraints
        .iter()
        .map(|k| {
            if k.rhs.is_negative() {
                Constraint {
                    coeffs: k.coeffs.iter().map(|a| -a).collect(),
                    sense: match k.sense {
                        Sense::Le => Sense::Ge,
                        Sense::Ge => Sense::Le,
                        Sense::Eq => Sense::Eq,
                    },
                    rhs: -&k.rhs,
                }
            } else {
                k.clone()
            }
        })
        .collect();
    let slacks = rows.iter().filter(|k| k.sense != Sense::Eq).count();
    let artificials = rows.iter().filter(|k| k.sense != Sense::Le).count();
    let width = n + slacks + artificials;
    let mut t = Tableau {
        rows: Vec::with_capacity(rows.len()),
        basis: Vec::with_capacity(rows.len()),
        width,
    };
    let (mut s, mut a) = (n, n + slacks);
    for k in &rows {
        let mut row = vec![Q::zero(); width + 1];
        row[..n].clone_from_slice(&k.coeffs);
        row[width] = k.rhs.clone();
        match k.sense {
            Sense::Le => {
                row[s] = Q::one();
                t.basis.push(s);
                s += 1;
            }
            Sense::Ge => {
                row[s] = -Q::one();
                row[a] = Q::one();
                t.basis.push(a);
                s += 1;
                a += 1;
            }
            Sense::Eq => {
                row[a] = Q::one();
                t.basis.push(a);
                a += 1;
            }
        }
        t.rows.push(row);
    }
    let first_artificial = n + slacks;
    if artificials > 0 {
        let mut c1 = vec![Q::zero(); width];
        for x in c1.iter_mut().skip(first_artificial) {
            *x = -Q::one();
        }
        t.run(&c1, width)?;
        if t.value(&c1).is_negative() {
            return Err(Error::Infeasible("no point satisfies every constraint".into()));
        }
        t.evict_artificials(first_artificial);
    }
    let mut c2 = vec![Q::zero(); width];
    c2[..n].clone_from_slice(c);
    t.run(&c2, first_artificial)?;
    let mut x = vec![Q::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rows[i][width].clone();
        }
    }
    let value = t.value(&c2);
    Ok(LpSolution { x, value })
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn value(&self, c: &[Q]) -> Q {
        self.basis
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (i, &b)| acc + &c[b] * &self.rows[i][self.width])
    }

    /// Simplex iterations over columns `< allowed`.
    fn run(&mut self, c: &[Q], allowed: usize) -> Result<()> {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(c[j].clone(), |acc, (i, &b)| acc - &c[b] * &self.rows[i][j]);
                reduced.is_positive()
            });
            let Some(j) = entering else { return Ok(()) };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][self.width] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return Err(Error::invalid("linear program is unbounded"));
            };
            self.pivot(r, j);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = j;
    }

    /// After a feasible first phase every artificial in the basis sits at
    /// zero; pivot it out, or drop its row when the row is redundant.
    fn evict_artificials(&mut self, first_artificial: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= first_artificial {
                match (0..first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    CoverOnEdges,
    IndependenceOnVertices,
}

/// Optimal weights on the edges (in `Graph::edges` order) or vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalWeights {
    pub kind: WeightKind,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<Q>,
    pub objective: Q,
}

impl Serialize for FractionalWeights {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FractionalWeights", 4)?;
        st.serialize_field("kind", &self.kind)?;
        if self.kind == WeightKind::CoverOnEdges {
            st.serialize_field("edges", &self.edges)?;
        }
        let w: Vec<String> = self.weights.iter().map(|q| q.to_string()).collect();
        st.serialize_field("weights", &w)?;
        st.serialize_field("objective", &self.objective.to_string())?;
        st.end()
    }
}

fn unit() -> Q {
    Q::one()
}

fn int(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Minimum total edge weight covering every vertex to weight at least 1.
pub fn fractional_cover(h: &Graph) -> Result<FractionalWeights> {
    if h.has_loops() {
        return Err(Error::invalid("fractional cover is defined on loop-free graphs"));
    }
    let edges = h.edges();
    if edges.is_empty() {
        return Err(Error::invalid("fractional cover needs at least one edge"));
    }
    if let Some(v) = (0..h.n()).find(|&v| h.degree(v) == 0) {
        return Err(Error::Infeasible(format!("vertex {v} is isolated and cannot be covered")));
    }
    let constraints: Vec<Constraint> = (0..h.n())
        .map(|v| Constraint {
            coeffs: edges.iter().map(|&(a, b)| int((a == v || b == v) as i64)).collect(),
            sense: Sense::Ge,
            rhs: unit(),
        })
        .collect();
    let c = vec![-unit(); edges.len()];
    let sol = maximize(&c, &constraints)?;
    Ok(FractionalWeights {
        kind: WeightKind::CoverOnEdges,
        edges,
        weights: sol.x,
        objective: -sol.value,
    })
}

/// Maximum total vertex weight in `[0, 1]` with every edge carrying at most 1.
pub fn fractional_independence(h: &Graph) -> Result<FractionalWeights> {
    if h.has_loops() {
        return Err(Error::invalid("fractional independence is defined on loop-free graphs"));
    }
    let n = h.n();
    let edges = h.edges();
    let mut constraints: Vec<Constraint> = edges
        .iter()
        .map(|&(a, b)| Constraint {
            coeffs: (0..n).map(|v| int((v == a || v == b) as i64)).collect(),
            sense: Sense::Le,
            rhs: unit(),
        })
        .collect();
    for v in 0..n {
        constraints.push(Constraint {
            coeffs: (0..n).map(|w| int((w == v) as i64)).collect(),
            sense: Sense::Le,
            rhs: unit(),
        });
    }
    let sol = maximize(&vec![unit(); n], &constraints)?;
    Ok(FractionalWeights {
        kind: WeightKind::IndependenceOnVertices,
        edges,
        weights: sol.x,
        objective: sol.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    fn q(p: i64, d: i64) -> Q {
        Q::new(p.into(), d.into())
    }

    /// Optimum over every basic solution: choose `n` constraints (including
    /// `x_j >= 0`) to hold with equality, solve, keep feasible points.
    fn oracle(c: &[Q], rows: &[Constraint]) -> Option<Q> {
        let n = c.len();
        let mut all: Vec<Constraint> = rows.to_vec();
        for j in 0..n {
            all.push(Constraint {
                coeffs: (0..n).map(|k| int((k == j) as i64)).collect(),
                sense: Sense::Ge,
                rhs: Q::zero(),
            });
        }
        let feasible = |x: &[Q]| {
            all.iter().all(|k| {
                let lhs: Q = k.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
                match k.sense {
                    Sense::Le => lhs <= k.rhs,
                    Sense::Ge => lhs >= k.rhs,
                    Sense::Eq => lhs == k.rhs,
                }
            })
        };
        let mut best: Option<Q> = None;
        let m = all.len();
        for mask in 0u32..1 << m {
            if mask.count_ones() as usize != n {
                continue;
            }
            let chosen: Vec<&Constraint> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| &all[i]).collect();
            if let Some(x) = solve(&chosen, n) {
                if feasible(&x) {
                    let v: Q = c.iter().zip(&x).map(|(a, b)| a * b).sum();
                    if best.as_ref().is_none_or(|b| v > *b) {
                        best = Some(v);
                    }
                }
            }
        }
        best
    }

    /// Gaussian elimination; None when singular.
    fn solve(rows: &[&Constraint], n: usize) -> Option<Vec<Q>> {
        let mut a: Vec<Vec<Q>> = rows
            .iter()
            .map(|k| {
                let mut r = k.coeffs.clone();
                r.push(k.rhs.clone());
                r
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            let pv = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &pv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pr = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(&pr) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n].clone()).collect())
    }

    #[test]
    fn examples() {
        let k2 = complete(2).unwrap();
        let c = fractional_cover(&k2).unwrap();
        assert_eq!((c.objective.clone(), c.weights.clone()), (q(1, 1), vec![q(1, 1)]));
        let k3 = complete(3).unwrap();
        let c = fractional_cover(&k3).unwrap();
        assert_eq!(c.objective, q(3, 2));
        assert_eq!(c.weights, vec![q(1, 2); 3]);
        let c5 = cycle(5).unwrap();
        let i = fractional_independence(&c5).unwrap();
        assert_eq!(i.objective, q(5, 2));
        assert_eq!(i.weights, vec![q(1, 2); 5]);
        assert!(matches!(fractional_cover(&Graph::new(3).unwrap()), Err(Error::InvalidInput(_))));
        let mut iso = Graph::new(3).unwrap();
        iso.add_edge(0, 1).unwrap();
        assert!(matches!(fractional_cover(&iso), Err(Error::Infeasible(_))));
        assert_eq!(fractional_independence(&iso).unwrap().objective, q(2, 1));
    }

    #[test]
    fn small_programs_match_basic_solutions() {
        for g in [complete(3).unwrap(), complete(4).unwrap(), cycle(4).unwrap(), cycle(5).unwrap(), path(4).unwrap()] {
            let edges = g.edges();
            let rows: Vec<Constraint> = (0..g.n())
                .map(|v| Constraint {
                    coeffs: edges.iter().map(|&(a, b)| int((a == v || b == v) as i64)).collect(),
                    sense: Sense::Ge,
                    rhs: unit(),
                })
                .collect();
            let best = oracle(&vec![-unit(); edges.len()], &rows).unwrap();
            assert_eq!(fractional_cover(&g).unwrap().objective, -best);
            let i = fractional_independence(&g).unwrap();
            assert_eq!(i.objective, fractional_cover(&g).unwrap().objective);
        }
    }

    #[test]
    fn general_programs() {
        // max x + y, x + 2y <= 4, 3x + y <= 6, x - y = 0  -> x = y = 4/3
        let rows = vec![
            Constraint { coeffs: vec![q(1, 1), q(2, 1)], sense: Sense::Le, rhs: q(4, 1) },
            Constraint { coeffs: vec![q(3, 1), q(1, 1)], sense: Sense::Le, rhs: q(6, 1) },
            Constraint { coeffs: vec![q(1, 1), q(-1, 1)], sense: Sense::Eq, rhs: q(0, 1) },
        ];
        let s = maximize(&[q(1, 1), q(1, 1)], &rows).unwrap();
        assert_eq!(s.x, vec![q(4, 3), q(4, 3)]);
        assert_eq!(Some(s.value), oracle(&[q(1, 1), q(1, 1)], &rows));
        let unbounded = vec![Constraint { coeffs: vec![q(1, 1), q(-1, 1)], sense: Sense::Le, rhs: q(1, 1) }];
        assert!(maximize(&[q(1, 1), q(0, 1)], &unbounded).is_err());
        let infeasible = vec![
            Constraint { coeffs: vec![q(1, 1)], sense: Sense::Ge, rhs: q(2, 1) },
            Constraint { coeffs: vec![q(1, 1)], sense: Sense::Le, rhs: q(1, 1) },
        ];
        assert!(matches!(maximize(&[q(1, 1)], &infeasible), Err(Error::Infeasible(_))));
        // negative right-hand side, redundant equality rows
        let rows = vec![
            Constraint { coeffs: vec![q(-1, 1), q(-1, 1)], sense: Sense::Le, rhs: q(-1, 1) },
            Constraint { coeffs: vec![q(1, 1), q(1, 1)], sense: Sense::Eq, rhs: q(3, 1) },
            Constraint { coeffs: vec![q(2, 1), q(2, 1)], sense: Sense::Eq, rhs: q(6, 1) },
        ];
        let s = maximize(&[q(-1, 1), q(2, 1)], &rows).unwrap();
        assert_eq!(s.value, q(6, 1));
    }
}
