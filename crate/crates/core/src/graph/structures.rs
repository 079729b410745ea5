use std::collections::BTreeSet;

use super::{bits, full_mask, MAX_VERTICES};
use crate::error::{check_cap, Error, Result};

/// Square 0-1 matrix with one bitset per row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeroOneMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl ZeroOneMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        check_cap("matrix order", n, MAX_VERTICES)?;
        Ok(ZeroOneMatrix {
            n,
            rows: vec![0; n],
        })
    }

    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        check_cap("matrix order", n, MAX_VERTICES)?;
        if rows.len() != n {
            return Err(Error::invalid(format!(
                "expected {n} rows, got {}",
                rows.len()
            )));
        }
        if rows.iter().any(|r| r & !full_mask(n) != 0) {
            return Err(Error::invalid("row has entries beyond column n"));
        }
        Ok(ZeroOneMatrix { n, rows })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_rows(n, (0..n).map(|i| 1u64 << i).collect())
    }

    pub fn all_ones(n: usize) -> Result<Self> {
        Self::from_rows(n, vec![full_mask(n); n])
    }

    /// Block-diagonal matrix of all-ones blocks of the given sizes.
    pub fn ones_blocks(sizes: &[usize]) -> Result<Self> {
        let n = sizes.iter().sum();
        let mut rows = Vec::with_capacity(n);
        let mut offset = 0;
        for &s in sizes {
            let block = full_mask(s) << offset;
            rows.extend(std::iter::repeat(block).take(s));
            offset += s;
        }
        Self::from_rows(n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// Row sums, recomputed from the bitsets.
    pub fn row_sums(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (0..self.n)
            .map(|j| self.rows.iter().filter(|r| *r >> j & 1 == 1).count())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = vec![0u64; self.n];
        for (i, &r) in self.rows.iter().enumerate() {
            for j in bits(r) {
                t[j] |= 1 << i;
            }
        }
        ZeroOneMatrix { n: self.n, rows: t }
    }
}

pub const LATTICE_COORD_MAX: i64 = 1_000_000;

/// A finite union of unit cubes, one per integer cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBody {
    dim: usize,
    cells: BTreeSet<Vec<i64>>,
}

impl LatticeBody {
    pub fn new(dim: usize, cells: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::invalid("lattice body needs dimension at least 2"));
        }
        let cells: BTreeSet<Vec<i64>> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::invalid("lattice body is empty"));
        }
        for c in &cells {
            if c.len() != dim {
                return Err(Error::invalid(format!(
                    "cell {c:?} does not have {dim} coordinates"
                )));
            }
            if c.iter().any(|x| x.abs() > LATTICE_COORD_MAX) {
                return Err(Error::invalid(format!("cell {c:?} has a coordinate beyond 10^6")));
            }
        }
        Ok(LatticeBody { dim, cells })
    }

    /// Axis-parallel box with the given side lengths, anchored at the origin.
    pub fn cuboid(sides: &[usize]) -> Result<Self> {
        let mut cells = vec![Vec::new()];
        for &s in sides {
            cells = cells
                .into_iter()
                .flat_map(|c| {
                    (0..s as i64).map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        Self::new(sides.len(), cells)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &BTreeSet<Vec<i64>> {
        &self.cells
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let mut head = header.split_whitespace();
        if head.next() != Some("body") {
            return Err(Error::parse(1, "expected header `body <dim>`"));
        }
        let dim: usize = head
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::parse(1, "missing dimension"))?;
        let mut cells = Vec::new();
        for (i, line) in lines {
            let cell: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::parse(i + 1, e.to_string()))?;
            cells.push(cell);
        }
        Self::new(dim, cells)
    }

    pub fn render(&self) -> String {
        let mut out = format!("body {}\n", self.dim);
        for c in &self.cells {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

pub const SET_FAMILY_MAX_N: usize = 30;

/// A multiset of subsets of `{0, .., n-1}` stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    members: Vec<u32>,
}

impl SetFamily {
    pub fn new(n: usize, members: Vec<u32>) -> Result<Self> {
        check_cap("ground set size", n, SET_FAMILY_MAX_N)?;
        let ground = full_mask(n) as u32;
        if let Some(m) = members.iter().find(|&&m| m & !ground != 0) {
            return Err(Error::invalid(format!(
                "member {m:#b} is not a subset of the ground set"
            )));
        }
        Ok(SetFamily { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_sums() {
        let m = ZeroOneMatrix::ones_blocks(&[2, 3]).unwrap();
        assert_eq!(m.row_sums(), vec![2, 2, 3, 3, 3]);
        assert_eq!(m.col_sums(), m.row_sums());
        assert_eq!(m.transpose(), m);
        assert!(ZeroOneMatrix::from_rows(2, vec![0b100, 0]).is_err());
    }

    #[test]
    fn lattice_validation() {
        assert!(LatticeBody::new(1, vec![vec![0]]).is_err());
        assert!(LatticeBody::new(2, Vec::<Vec<i64>>::new()).is_err());
        assert!(LatticeBody::new(2, vec![vec![0, 2_000_000]]).is_err());
        let cube = LatticeBody::cuboid(&[2, 2, 2]).unwrap();
        assert_eq!(cube.cells().len(), 8);
        let back = LatticeBody::parse(&cube.render()).unwrap();
        assert_eq!(back, cube);
    }

    #[test]
    fn set_family_checks_ground() {
        assert!(SetFamily::new(3, vec![0b1000]).is_err());
        assert!(SetFamily::new(31, vec![]).is_err());
        assert_eq!(SetFamily::new(3, vec![0b101, 0b101]).unwrap().len(), 2);
    }
}
