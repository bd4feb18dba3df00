//! graph6 and edge-list encodings.
//!
//! graph6 follows the format description shipped with nauty: an `N(n)` size
//! header followed by the upper triangle of the adjacency matrix, column by
//! column, packed big-endian into 6-bit groups offset by 63. Edge lists are
//! one `u v` pair per line with `#` comments; an optional `# n=<count>` line
//! records trailing isolated vertices so that every graph round-trips.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

const GRAPH6_HEADER: &[u8] = b">>graph6<<";
const MAX_N_SHORT: usize = 62;
const MAX_N_MEDIUM: usize = 258_047;
const MAX_N_LONG: usize = 68_719_476_735;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edges" | "el" | "txt" => Ok(Format::EdgeList),
            other => Err(Error::domain(format!("unknown graph format {other:?}"))),
        }
    }
}

pub fn parse_graph(text: &[u8], format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::EdgeList => parse_edgelist(text),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> Vec<u8> {
    match format {
        Format::Graph6 => write_graph6(g),
        Format::EdgeList => write_edgelist(g).into_bytes(),
    }
}

fn sixbits(text: &[u8], pos: usize) -> Result<u8> {
    match text.get(pos) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(Error::format(pos, format!("byte {b:#04x} outside graph6 range"))),
        None => Err(Error::format(pos, "unexpected end of graph6 input")),
    }
}

fn parse_graph6(text: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if text.starts_with(GRAPH6_HEADER) {
        start = GRAPH6_HEADER.len();
    }
    let mut end = text.len();
    while end > start && text[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let text = &text[..end];

    let (n, mut pos) = match text.get(start) {
        None => return Err(Error::format(start, "empty graph6 input")),
        Some(&126) => {
            if text.get(start + 1) == Some(&126) {
                let mut n = 0usize;
                for i in 0..6 {
                    n = (n << 6) | sixbits(text, start + 2 + i)? as usize;
                }
                if n <= MAX_N_MEDIUM {
                    return Err(Error::format(start, "non-canonical 8-byte size header"));
                }
                (n, start + 8)
            } else {
                let mut n = 0usize;
                for i in 0..3 {
                    n = (n << 6) | sixbits(text, start + 1 + i)? as usize;
                }
                if n <= MAX_N_SHORT {
                    return Err(Error::format(start, "non-canonical 4-byte size header"));
                }
                (n, start + 4)
            }
        }
        Some(_) => (sixbits(text, start)? as usize, start + 1),
    };

    let bits = n * n.saturating_sub(1) / 2;
    let data_len = bits.div_ceil(6);
    if text.len() - pos != data_len {
        let at = (pos + data_len).min(text.len());
        return Err(Error::format(
            at,
            format!(
                "expected {data_len} data bytes for n={n}, found {}",
                text.len() - pos
            ),
        ));
    }

    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    let mut k = 0usize;
    while k < bits {
        let chunk = sixbits(text, pos)?;
        for shift in (0..6).rev() {
            let bit = (chunk >> shift) & 1;
            if k < bits {
                if bit == 1 {
                    edges.push((i, j));
                }
                i += 1;
                if i == j {
                    i = 0;
                    j += 1;
                }
            } else if bit == 1 {
                return Err(Error::format(pos, "nonzero padding bits"));
            }
            k += 1;
        }
        pos += 1;
    }
    Graph::from_edges(n, edges).map_err(|e| Error::format(start, e.to_string()))
}

fn write_graph6(g: &Graph) -> Vec<u8> {
    let n = g.n();
    assert!(n <= MAX_N_LONG, "graph too large for graph6");
    let mut out = Vec::new();
    if n <= MAX_N_SHORT {
        out.push(n as u8 + 63);
    } else if n <= MAX_N_MEDIUM {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    out
}

fn parse_edgelist(text: &[u8]) -> Result<Graph> {
    let text = std::str::from_utf8(text).map_err(|e| Error::format(e.valid_up_to(), "not UTF-8"))?;
    let mut declared: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut line_offsets = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let line_start = offset;
        offset += line.len();
        let body = line.trim_end_matches(['\n', '\r']);
        let trimmed = body.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let lead = body.len() - trimmed.len();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("n=") {
                let n = value.trim().parse::<usize>().map_err(|_| {
                    Error::format(line_start + lead, format!("bad vertex count {value:?}"))
                })?;
                declared = Some((n, line_start + lead));
            }
            continue;
        }
        let mut ends = [0usize; 2];
        let mut count = 0;
        let mut cursor = lead;
        for token in trimmed.split_whitespace() {
            let at = line_start + cursor + body[cursor..].find(token).unwrap_or(0);
            cursor = at - line_start + token.len();
            if count == 2 {
                return Err(Error::format(at, "more than two fields on an edge line"));
            }
            ends[count] = token
                .parse()
                .map_err(|_| Error::format(at, format!("not a vertex index: {token:?}")))?;
            count += 1;
        }
        if count != 2 {
            return Err(Error::format(line_start + lead, "edge line needs two vertex indices"));
        }
        if ends[0] == ends[1] {
            return Err(Error::format(line_start + lead, format!("loop at vertex {}", ends[0])));
        }
        edges.push((ends[0], ends[1]));
        line_offsets.push(line_start + lead);
    }

    let needed = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match declared {
        Some((n, at)) if n < needed => {
            return Err(Error::format(
                at,
                format!("declared n={n} but an edge uses vertex {}", needed - 1),
            ))
        }
        Some((n, _)) => n,
        None => needed,
    };

    let mut seen: Vec<(usize, usize, usize)> = edges
        .iter()
        .zip(&line_offsets)
        .map(|(&(u, v), &at)| (u.min(v), u.max(v), at))
        .collect();
    seen.sort_unstable();
    for w in seen.windows(2) {
        if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
            let at = w[0].2.max(w[1].2);
            return Err(Error::format(at, format!("parallel edge {}-{}", w[1].0, w[1].1)));
        }
    }
    Graph::from_edges(n, edges).map_err(|e| Error::format(0, e.to_string()))
}

fn write_edgelist(g: &Graph) -> String {
    let mut lines = Vec::with_capacity(g.num_edges() + 1);
    let needed = g.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
    if needed != g.n() {
        lines.push(format!("# n={}", g.n()));
    }
    lines.extend(g.edges().map(|(u, v)| format!("{u} {v}")));
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn edgelist_triangle() {
        let g = parse_graph(b"0 1\n1 2\n2 0", Format::EdgeList).unwrap();
        assert_eq!(g, triangle());
        assert_eq!(serialize_graph(&g, Format::EdgeList), b"0 1\n0 2\n1 2");
    }

    #[test]
    fn edgelist_loop_is_rejected() {
        let err = parse_graph(b"0 0", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Format { offset: 0, .. }), "{err}");
    }

    #[test]
    fn edgelist_reports_offsets() {
        let err = parse_graph(b"0 1\n1 x\n", Format::EdgeList).unwrap_err();
        assert_eq!(err, Error::format(6, "not a vertex index: \"x\""));
        let err = parse_graph(b"0 1\n# c\n1 0\n", Format::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Format { offset: 8, .. }), "{err}");
    }

    #[test]
    fn edgelist_isolated_vertices_round_trip() {
        let g = Graph::from_edges(5, [(0, 1)]).unwrap();
        let text = serialize_graph(&g, Format::EdgeList);
        assert_eq!(text, b"# n=5\n0 1");
        assert_eq!(parse_graph(&text, Format::EdgeList).unwrap(), g);
        assert_eq!(parse_graph(b"", Format::EdgeList).unwrap(), Graph::empty(0));
    }

    #[test]
    fn graph6_small_examples() {
        let g = parse_graph(b"D?{", Format::Graph6).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(serialize_graph(&g, Format::Graph6), b"D?{");
        assert_eq!(serialize_graph(&triangle(), Format::Graph6), b"Bw");
        assert_eq!(serialize_graph(&Graph::empty(0), Format::Graph6), b"?");
        assert_eq!(
            parse_graph(b">>graph6<<Bw\n", Format::Graph6).unwrap(),
            triangle()
        );
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(
            parse_graph(b"Bww", Format::Graph6),
            Err(Error::Format { .. })
        ));
        // 'C' = n=4: 6 bits, one data byte. '@' sets only the padding-free last bit.
        assert!(parse_graph(b"C@", Format::Graph6).is_ok());
        // n=3 has 3 bits; 'x' - 63 = 0b111001 has a nonzero padding bit.
        assert!(matches!(
            parse_graph(b"Bx", Format::Graph6),
            Err(Error::Format { offset: 1, .. })
        ));
        assert!(parse_graph(b"B\x01", Format::Graph6).is_err());
    }

    #[test]
    fn graph6_medium_header() {
        let g = Graph::from_edges(100, [(0, 99), (5, 6)]).unwrap();
        let text = serialize_graph(&g, Format::Graph6);
        assert_eq!(&text[..4], &[126, 63, 64, 100 - 64 + 63]);
        assert_eq!(parse_graph(&text, Format::Graph6).unwrap(), g);
    }
}
