//! graph6 text encoding for undirected graphs.
//!
//! Only the short form is implemented: a single byte `n + 63` for the vertex
//! count (so `n ≤ 62`), followed by the upper triangle of the adjacency
//! matrix in column-major order, packed six bits per byte (most significant
//! bit first) with 63 added to keep every byte printable. An optional
//! `>>graph6<<` prefix is accepted on input.

use thiserror::Error;

use super::Graph;

/// Largest vertex count the short graph6 form can carry.
pub const MAX_GRAPH6: usize = 62;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

/// Errors from graph6 parsing and formatting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    /// Nothing but whitespace.
    #[error("empty input")]
    Empty,
    /// The input uses the multi-byte vertex count this module does not read.
    #[error("long-form vertex counts (first byte '~') are not supported")]
    LongFormUnsupported,
    /// A byte outside the printable graph6 alphabet.
    #[error("byte {byte:#04x} at position {index} outside the graph6 range")]
    InvalidByte {
        /// The offending byte.
        byte: u8,
        /// Its position in the (header-stripped) input.
        index: usize,
    },
    /// Fewer adjacency bytes than the vertex count requires.
    #[error("input ends early: {got} adjacency bytes where {expected} are required")]
    Truncated {
        /// Adjacency bytes required by the vertex count.
        expected: usize,
        /// Adjacency bytes actually present.
        got: usize,
    },
    /// More bytes than the vertex count allows.
    #[error("{extra} extra bytes after the adjacency data")]
    TrailingData {
        /// Number of surplus bytes.
        extra: usize,
    },
    /// Unused trailing bits of the last byte must be zero.
    #[error("nonzero bits in the final byte's padding")]
    NonzeroPadding,
    /// The graph has too many vertices for the short form.
    #[error("{0} vertices exceed the short-form graph6 maximum {MAX_GRAPH6}")]
    TooLarge(usize),
}

/// Upper-triangle pairs in graph6 bit order: `(0,1), (0,2), (1,2), (0,3), …`
fn bit_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |v| (0..v).map(move |u| (u, v)))
}

/// Encodes a graph as a short-form graph6 string.
pub fn format_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_GRAPH6 {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = vec![n as u8 + OFFSET];
    let mut acc = 0u8;
    let mut filled = 0;
    for (u, v) in bit_pairs(n) {
        acc = acc << 1 | u8::from(g.has_edge(u, v));
        filled += 1;
        if filled == 6 {
            out.push(acc + OFFSET);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("all bytes printable"))
}

/// Decodes a short-form graph6 string; an optional `>>graph6<<` prefix and
/// trailing ASCII whitespace are tolerated, nothing else is.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let s = text.trim_end();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Graph6Error::Empty);
    };
    if first == b'~' {
        return Err(Graph6Error::LongFormUnsupported);
    }
    if !(OFFSET..=OFFSET + 62).contains(&first) {
        return Err(Graph6Error::InvalidByte { byte: first, index: 0 });
    }
    let n = (first - OFFSET) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < nbytes {
        return Err(Graph6Error::Truncated { expected: nbytes, got: data.len() });
    }
    if data.len() > nbytes {
        return Err(Graph6Error::TrailingData { extra: data.len() - nbytes });
    }
    for (i, &b) in data.iter().enumerate() {
        if !(OFFSET..=OFFSET + 63).contains(&b) {
            return Err(Graph6Error::InvalidByte { byte: b, index: i + 1 });
        }
    }
    let bit = |k: usize| data[k / 6] - OFFSET >> (5 - k % 6) & 1 == 1;
    for k in nbits..nbytes * 6 {
        if bit(k) {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    let mut g = Graph::new(n).expect("short-form count is within bounds");
    for (k, (u, v)) in bit_pairs(n).enumerate() {
        if bit(k) {
            g.add_edge(u, v).expect("pairs are in range and loopless");
        }
    }
    Ok(g)
}
