//! Text format for joint distributions: a header `joint <n> <r1> .. <rn>`
//! then one line `v1 .. vn p/q` per tuple. Probabilities are written in
//! lowest terms, tuples in lexicographic order.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::JointDistribution;
use crate::error::{Error, Result};

pub fn render_joint(j: &JointDistribution) -> String {
    let mut out = format!("joint {}", j.arity());
    for r in j.ranges() {
        let _ = write!(out, " {r}");
    }
    out.push('\n');
    for (t, p) in j.entries() {
        for v in &t {
            let _ = write!(out, "{v} ");
        }
        let _ = writeln!(out, "{}/{}", p.numer(), p.denom());
    }
    out
}

pub fn parse_joint(text: &str) -> Result<JointDistribution> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let bad = || Error::parse(hl, "expected `joint <n> <r1> .. <rn>`");
    if tokens.len() < 2 || tokens[0] != "joint" {
        return Err(bad());
    }
    let n: usize = tokens[1].parse().map_err(|_| bad())?;
    if tokens.len() != n + 2 {
        return Err(bad());
    }
    let ranges: Vec<u32> = tokens[2..]
        .iter()
        .map(|t| t.parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    let mut table = Vec::new();
    for (ln, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != n + 1 {
            return Err(Error::parse(ln, format!("expected {n} values and a probability")));
        }
        let tuple: Vec<u32> = parts[..n]
            .iter()
            .map(|t| t.parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(ln, "bad value"))?;
        let p = parse_rational(parts[n]).ok_or_else(|| Error::parse(ln, "probability must be `p/q` or an integer"))?;
        table.push((tuple, p));
    }
    JointDistribution::new(ranges, table).map_err(|e| Error::parse(hl, e.to_string()))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if q.sign() != num_bigint::Sign::Plus {
        return None;
    }
    Some(BigRational::new(p, q))
}

pub fn read_joint(path: impl AsRef<Path>) -> Result<JointDistribution> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_joint(&text)
}

pub fn write_joint(j: &JointDistribution, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, render_joint(j)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::random_joint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_round_trip() {
        let text = "joint 2 2 3\n0 0 1/6\n0 2 0/1\n1 1 1/2\n1 2 1/3\n";
        let j = parse_joint(text).unwrap();
        assert_eq!(render_joint(&j), text);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let j = random_joint(&mut rng, 3, 4);
            assert_eq!(parse_joint(&render_joint(&j)).unwrap(), j);
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("j.txt");
        let j = JointDistribution::uniform(vec![2, 2]).unwrap();
        write_joint(&j, &path).unwrap();
        assert_eq!(read_joint(&path).unwrap(), j);
    }

    #[test]
    fn unreduced_input_is_normalized() {
        let j = parse_joint("joint 1 2\n0 2/4\n1 1/2\n").unwrap();
        assert_eq!(render_joint(&j), "joint 1 2\n0 1/2\n1 1/2\n");
    }

    #[test]
    fn malformed() {
        assert!(parse_joint("joint 1 2\n0 1/3\n1 1/3\n").is_err());
        assert!(parse_joint("joint 2 2\n0 0 1/1\n").is_err());
        assert!(parse_joint("joint 1 2\n2 1/1\n").is_err());
        assert!(parse_joint("joint 1 2\n0 1/0\n").is_err());
        assert!(parse_joint("jnt 1 2\n0 1/1\n").is_err());
        assert!(parse_joint("joint 1 2\n0 -1/2\n1 3/2\n").is_err());
    }
}
