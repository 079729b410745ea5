//! Text formats.
//!
//! Graph: a header `graph <n> loops=<0|1> bipartition=<mask|none>` followed by
//! one `u v` line per edge with `u <= v`; `u u` is a loop. The mask is a
//! decimal bitmask of one class. Matrix: a header `matrix <n>` followed by
//! `n` lines of `n` characters from `{0,1}`.

use std::fmt::Write as _;
use std::path::Path;

use super::{full_mask, Graph, ZeroOneMatrix};
use crate::error::{Error, Result};

pub fn render_graph(g: &Graph) -> String {
    let bip = match g.bipartition() {
        Some(m) => m.to_string(),
        None => "none".to_string(),
    };
    let mut out = format!(
        "graph {} loops={} bipartition={}\n",
        g.n(),
        g.loops_allowed() as u8,
        bip
    );
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::parse(hl, "expected `graph <n> loops=<0|1> bipartition=<mask|none>`");
    if tokens.len() != 4 || tokens[0] != "graph" {
        return Err(bad_header());
    }
    let n: usize = tokens[1].parse().map_err(|_| bad_header())?;
    let loops = match tokens[2] {
        "loops=0" => false,
        "loops=1" => true,
        _ => return Err(bad_header()),
    };
    let bip = match tokens[3].strip_prefix("bipartition=") {
        Some("none") => None,
        Some(m) => Some(parse_mask(m).ok_or_else(bad_header)?),
        None => return Err(bad_header()),
    };
    let mut g = if loops {
        Graph::with_loops(n)?
    } else {
        Graph::new(n)?
    };
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (u, v) = match parts.as_slice() {
            [a, b] => (
                a.parse::<usize>().map_err(|_| Error::parse(ln, "bad vertex index"))?,
                b.parse::<usize>().map_err(|_| Error::parse(ln, "bad vertex index"))?,
            ),
            _ => return Err(Error::parse(ln, "expected `u v`")),
        };
        if u >= n || v >= n {
            return Err(Error::parse(ln, format!("vertex index out of range for n={n}")));
        }
        if u > v {
            return Err(Error::parse(ln, format!("edge `{u} {v}` must be listed as `{v} {u}`")));
        }
        if g.has_edge(u, v) {
            return Err(Error::parse(ln, format!("duplicate edge `{u} {v}`")));
        }
        if u == v && !loops {
            return Err(Error::parse(ln, format!("loop at {u} but loops=0")));
        }
        g.add_edge(u, v).map_err(|e| Error::parse(ln, e.to_string()))?;
    }
    if let Some(mask) = bip {
        if mask & !full_mask(n) != 0 {
            return Err(Error::parse(hl, "bipartition mask exceeds vertex range"));
        }
        g.set_bipartition(mask).map_err(|e| Error::parse(hl, e.to_string()))?;
    }
    Ok(g)
}

fn parse_mask(s: &str) -> Option<u64> {
    match s.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16).ok(),
        None => s.parse().ok(),
    }
}

pub fn render_matrix(m: &ZeroOneMatrix) -> String {
    let mut out = format!("matrix {}\n", m.n());
    for i in 0..m.n() {
        for j in 0..m.n() {
            out.push(if m.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<ZeroOneMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["matrix", n] => n.parse().map_err(|_| Error::parse(hl, "bad matrix order"))?,
        _ => return Err(Error::parse(hl, "expected `matrix <n>`")),
    };
    let mut rows = Vec::with_capacity(n);
    for (ln, line) in lines {
        if line.len() != n {
            return Err(Error::parse(ln, format!("row must have {n} entries")));
        }
        let mut row = 0u64;
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => row |= 1 << j,
                _ => return Err(Error::parse(ln, format!("invalid entry `{ch}`"))),
            }
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::parse(hl, format!("expected {n} rows, found {}", rows.len())));
    }
    ZeroOneMatrix::from_rows(n, rows)
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&read_text(path.as_ref())?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &render_graph(g))
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ZeroOneMatrix> {
    parse_matrix(&read_text(path.as_ref())?)
}

pub fn write_matrix(m: &ZeroOneMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &render_matrix(m))
}
