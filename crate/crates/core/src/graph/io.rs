//! graph6 and plain edge-list formats.

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("graph6: empty input")]
    Empty,
    #[error("graph6: byte {0:#04x} outside the printable range 63..=126")]
    BadByte(u8),
    #[error("graph6: expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("graph6: nonzero padding bits")]
    Padding,
    #[error("graph6: vertex count {0} exceeds the format limit")]
    TooLarge(usize),
    #[error("edge list, line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const HEADER: &str = ">>graph6<<";

fn encode_n(n: usize, out: &mut Vec<u8>) -> Result<(), FormatError> {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else if n < 1 << 36 {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        return Err(FormatError::TooLarge(n));
    }
    Ok(())
}

/// Encodes a graph in graph6 without header or trailing newline.
pub fn to_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out)?;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 string; an optional `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn from_graph6(s: &str) -> Result<Graph, FormatError> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::BadByte(b));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (val(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(FormatError::WrongLength { expected: 3, found: bytes.len() - 1 });
        }
        (bytes[1..4].iter().fold(0, |a, &b| a << 6 | val(b)), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(FormatError::WrongLength { expected: 6, found: bytes.len().saturating_sub(2) });
        }
        (bytes[2..8].iter().fold(0, |a, &b| a << 6 | val(b)), &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if rest.len() != expected {
        return Err(FormatError::WrongLength { expected, found: rest.len() });
    }
    let bit = |k: usize| (val(rest[k / 6]) >> (5 - k % 6)) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    if (k..expected * 6).any(bit) {
        return Err(FormatError::Padding);
    }
    Ok(g)
}

/// Writes `n m` followed by one `u v` line per edge in lexicographic order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parses the edge-list format; edges may appear in any order. Blank lines and
/// lines starting with `#` are skipped.
pub fn from_edge_list(s: &str) -> Result<Graph, FormatError> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line, msg: &str| FormatError::EdgeList { line, msg: msg.to_string() };
    let pair = |line: usize, l: &str| -> Result<(usize, usize), FormatError> {
        let mut it = l.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
            _ => Err(err(line, "expected two nonnegative integers")),
        }
    };
    let (line, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let (n, m) = pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(pair(line, l)?);
    }
    if edges.len() != m {
        return Err(err(line, &format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(Graph::from_edges(n, edges)?)
}

/// Parses either format, deciding by content: edge lists start with a digit.
pub fn parse_graph(s: &str) -> Result<Graph, FormatError> {
    let t = s.trim_start();
    if t.starts_with(|c: char| c.is_ascii_digit() || c == '#') {
        from_edge_list(s)
    } else {
        from_graph6(t.lines().next().unwrap_or(""))
    }
}
