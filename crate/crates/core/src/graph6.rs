//! graph6 codec.
//!
//! Layout: size bytes, then the upper-triangle bits x(0,1), x(0,2), x(1,2),
//! x(0,3), ... packed six to a byte, most significant first, each byte
//! offset by 63.

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

/// Optional first-line header written by nauty tools.
pub const HEADER: &str = ">>graph6<<";

/// Largest order encodable with the single-byte size form.
pub const MAX_SHORT_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte} at position {position} is outside the graph6 range 63..=126")]
    InvalidByte { position: usize, byte: u8 },
    #[error("truncated size field")]
    TruncatedSize,
    #[error("graph6 order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("expected {expected} adjacency bytes for order {order}, found {found}")]
    WrongLength { order: usize, expected: usize, found: usize },
    #[error("nonzero padding bits in the final byte")]
    NonZeroPadding,
    #[error("order {0} needs the multi-byte size form, which is not supported for encoding")]
    UnsupportedSize(usize),
}

fn edge_bits(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Decodes one graph6 line, tolerating a leading `>>graph6<<` header and trailing newline.
pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(position) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Graph6Error::InvalidByte { position, byte: bytes[position] });
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Graph6Error::TruncatedSize);
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::TruncatedSize);
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let bits = edge_bits(n);
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::WrongLength { order: n, expected, found: body.len() });
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Graph6Error::NonZeroPadding);
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Encodes with the single-byte size form (order at most 62).
pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    if g.order() > MAX_SHORT_ORDER {
        return Err(Graph6Error::UnsupportedSize(g.order()));
    }
    Ok(encode(g))
}

/// Any order up to 64, using the 4-byte size form above 62.
pub(crate) fn encode(g: &Graph) -> String {
    let n = g.order();
    let bits = edge_bits(n);
    let mut out = Vec::with_capacity(4 + bits.div_ceil(6));
    if n <= MAX_SHORT_ORDER {
        out.push(n as u8 + 63);
    } else {
        out.extend([126, 63, (n >> 6) as u8 + 63, (n & 63) as u8 + 63]);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
