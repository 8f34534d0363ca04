//! graph6 and plain edge-list serialization.
//!
//! graph6 follows the format description shipped with nauty: a size prefix
//! `N(n)` followed by the upper triangle of the adjacency matrix read column
//! by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed six bits per byte
//! with 63 added to every byte.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn parse_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let digit = |b: u8| -> Result<usize> {
        if (63..=126).contains(&b) {
            Ok((b - 63) as usize)
        } else {
            Err(Error::Parse(format!("invalid graph6 byte {b:#x}")))
        }
    };
    match bytes {
        [] => Err(Error::Parse("empty graph6 string".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Parse("truncated graph6 size".into()));
            }
            let n = rest[..6].iter().try_fold(0usize, |acc, &b| Ok::<_, Error>((acc << 6) | digit(b)?))?;
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Parse("truncated graph6 size".into()));
            }
            let n = rest[..3].iter().try_fold(0usize, |acc, &b| Ok::<_, Error>((acc << 6) | digit(b)?))?;
            Ok((n, 4))
        }
        [b, ..] => {
            let n = digit(*b)?;
            if n > 62 {
                return Err(Error::Parse("invalid graph6 size byte".into()));
            }
            Ok((n, 1))
        }
    }
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let (n, offset) = parse_size(bytes)?;
    let body = &bytes[offset..];
    let total = n * n.saturating_sub(1) / 2;
    if body.len() != total.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {} for n={n}",
            body.len(),
            total.div_ceil(6)
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = body[k / 6];
            if !(63..=126).contains(&b) {
                return Err(Error::Parse(format!("invalid graph6 byte {b:#x}")));
            }
            if (b - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Graphs serialize as their graph6 string.
impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&to_graph6(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        from_graph6(&s).map_err(serde::de::Error::custom)
    }
}

/// `n m` header, then one `u v` line per edge with `u < v`, sorted.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn from_edge_list(s: &str) -> Result<Graph> {
    let mut lines = s
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
    let pair = |line: &str| -> Result<(usize, usize)> {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(Error::Parse(format!("expected two integers, got `{line}`"))),
        }
    };
    let (n, m) = pair(header)?;
    let mut g = Graph::empty(n);
    for line in lines {
        let (u, v) = pair(line)?;
        if u >= v {
            return Err(Error::Parse(format!("edge `{line}` must satisfy u < v")));
        }
        if !g.add_edge(u, v)? {
            return Err(Error::Parse(format!("duplicate edge `{line}`")));
        }
    }
    if g.m() != m {
        return Err(Error::Parse(format!("header declares {m} edges, found {}", g.m())));
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl GraphFormat {
    /// `.g6` / `.graph6` select graph6, anything else the edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            _ => GraphFormat::EdgeList,
        }
    }
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    match GraphFormat::from_path(path) {
        GraphFormat::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| Error::Parse("empty graph6 file".into()))?;
            from_graph6(line.trim())
        }
        GraphFormat::EdgeList => from_edge_list(&text),
    }
}

pub fn write_graph(path: &Path, g: &Graph) -> Result<()> {
    let text = match GraphFormat::from_path(path) {
        GraphFormat::Graph6 => format!("{}\n", to_graph6(g)),
        GraphFormat::EdgeList => to_edge_list(g),
    };
    std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
