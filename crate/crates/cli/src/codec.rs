//! Graph interchange codecs.
//!
//! Two formats are supported: a line-oriented edge list for hand-written
//! inputs and the graph6 line format for streaming enumerated graphs
//! compactly.  Both round-trip exactly on every graph the toolkit produces.

use dit_core::graph::{Graph, GraphError};
use thiserror::Error;

/// Errors from parsing or encoding either format.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("empty graph6 string")]
    EmptyGraph6,
    #[error("graph6 byte {byte:#04x} at position {pos} is outside 63..=126")]
    ByteOutOfRange { byte: u8, pos: usize },
    #[error("graph6 bit field has {got} payload bytes, expected {expected}")]
    BitFieldLength { expected: usize, got: usize },
    #[error("order {n} exceeds the graph6 single-byte cap of 62")]
    OrderTooLarge { n: usize },
    #[error("multi-byte graph6 order headers are not supported")]
    MultiByteHeader,
    #[error("line {line}: expected `u v`, found `{text}`")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    EdgeOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("missing header line with the vertex count")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Encodes a graph as a graph6 line: one header byte `n + 63`, then the
/// upper-triangle adjacency bits in column order (0,1), (0,2), (1,2),
/// (0,3), ... packed big-endian into 6-bit groups, each group offset by 63.
pub fn encode_graph6(g: &Graph) -> Result<String, CodecError> {
    let n = g.n();
    if n > 62 {
        return Err(CodecError::OrderTooLarge { n });
    }
    let mut bytes = vec![n as u8 + 63];
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        // Zero-pad the final partial group on the right.
        bytes.push((group << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are printable ASCII"))
}

/// Decodes one graph6 line.
pub fn decode_graph6(s: &str) -> Result<Graph, CodecError> {
    let bytes = s.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(CodecError::ByteOutOfRange { byte: bytes[pos], pos });
    }
    let (&header, body) = bytes.split_first().ok_or(CodecError::EmptyGraph6)?;
    if header == 126 {
        return Err(CodecError::MultiByteHeader);
    }
    let n = usize::from(header - 63);
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() != expected {
        return Err(CodecError::BitFieldLength { expected, got: body.len() });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// Parses an edge-list document: the first non-comment line holds the
/// vertex count, each following line one `u v` edge.  `#` starts a comment,
/// whole-line or trailing; blank lines are skipped.
pub fn read_edgelist(text: &str) -> Result<Graph, CodecError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let malformed = || CodecError::MalformedLine { line, text: body.to_string() };
        let fields: Vec<&str> = body.split_whitespace().collect();
        match n {
            None => {
                let [count] = fields[..] else { return Err(malformed()) };
                n = Some(count.parse().map_err(|_| malformed())?);
            }
            Some(count) => {
                let [u, v] = fields[..] else { return Err(malformed()) };
                let u: usize = u.parse().map_err(|_| malformed())?;
                let v: usize = v.parse().map_err(|_| malformed())?;
                for vertex in [u, v] {
                    if vertex >= count {
                        return Err(CodecError::EdgeOutOfRange { line, vertex, n: count });
                    }
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(CodecError::MissingHeader)?;
    Ok(Graph::new(n, &edges)?)
}

/// Writes the normalized edge-list document: header line, then sorted
/// edges, no comments.
pub fn write_edgelist(g: &Graph) -> String {
    let mut out = g.n().to_string();
    out.push('\n');
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dit_core::families::{FamilyId, FamilySpec};

    fn path(n: usize) -> Graph {
        FamilySpec { family: FamilyId::Path, n }.build().unwrap()
    }

    #[test]
    fn four_path_encodes_to_ch() {
        assert_eq!(encode_graph6(&path(4)).unwrap(), "Ch");
    }

    #[test]
    fn single_vertex_encodes_to_at() {
        assert_eq!(encode_graph6(&Graph::new(1, &[]).unwrap()).unwrap(), "@");
    }

    #[test]
    fn ch_decodes_to_the_four_path() {
        assert_eq!(decode_graph6("Ch").unwrap(), path(4));
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert_eq!(decode_graph6(""), Err(CodecError::EmptyGraph6));
        assert_eq!(
            decode_graph6("C h"),
            Err(CodecError::ByteOutOfRange { byte: b' ', pos: 1 })
        );
        assert_eq!(
            decode_graph6("C"),
            Err(CodecError::BitFieldLength { expected: 1, got: 0 })
        );
        assert_eq!(
            decode_graph6("Chh"),
            Err(CodecError::BitFieldLength { expected: 1, got: 2 })
        );
        assert_eq!(decode_graph6("~"), Err(CodecError::MultiByteHeader));
    }

    #[test]
    fn edge_list_parses_the_four_path() {
        assert_eq!(read_edgelist("4\n0 1\n1 2\n2 3").unwrap(), path(4));
    }

    #[test]
    fn edge_list_supports_comments_and_blanks() {
        let doc = "# a path\n4\n\n0 1 # first\n1 2\n2 3\n";
        assert_eq!(read_edgelist(doc).unwrap(), path(4));
    }

    #[test]
    fn edge_list_rejects_bad_input() {
        assert_eq!(
            read_edgelist("3\n0 3"),
            Err(CodecError::EdgeOutOfRange { line: 2, vertex: 3, n: 3 })
        );
        assert_eq!(
            read_edgelist("3\n0 1 2"),
            Err(CodecError::MalformedLine { line: 2, text: "0 1 2".into() })
        );
        assert_eq!(read_edgelist("# nothing\n"), Err(CodecError::MissingHeader));
        assert_eq!(
            read_edgelist("2\n0 0"),
            Err(CodecError::Graph(GraphError::SelfLoop(0)))
        );
    }

    #[test]
    fn edge_list_round_trips_normalized_documents() {
        let doc = "4\n0 1\n1 2\n2 3\n";
        assert_eq!(write_edgelist(&read_edgelist(doc).unwrap()), doc);
    }
}
