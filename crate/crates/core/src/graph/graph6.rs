//! graph6 encoding: printable bytes 63..=126 carrying six bits each, a size
//! header `N(n)`, then the upper triangle of the adjacency matrix read column
//! by column, `(0,1),(0,2),(1,2),(0,3),...`, zero padded to a multiple of six.

use super::Graph;
use crate::error::{Error, Result};

/// Optional header accepted by [`parse_graph6`].
pub const GRAPH6_HEADER: &str = ">>graph6<<";

/// Largest order this implementation reads or writes (the four-byte size
/// header limit).
pub const MAX_GRAPH6_ORDER: u64 = 258_047;

const BIAS: u8 = 63;

fn malformed(position: usize, reason: impl Into<String>) -> Error {
    Error::MalformedGraph6 {
        position,
        reason: reason.into(),
    }
}

fn write_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Encodes `g` without header or trailing newline.
///
/// # Panics
/// If `g` has more than [`MAX_GRAPH6_ORDER`] vertices.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n as u64 <= MAX_GRAPH6_ORDER, "graph too large for graph6");
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + bits.div_ceil(6));
    write_size(n, &mut out);

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Decodes one graph6 record. An optional `>>graph6<<` prefix and a single
/// trailing line terminator are accepted; anything else is rejected.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text
        .strip_suffix('\n')
        .map(|t| t.strip_suffix('\r').unwrap_or(t))
        .unwrap_or(text);
    let offset = if text.starts_with(GRAPH6_HEADER) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    let bytes = &text.as_bytes()[offset..];
    if bytes.is_empty() {
        return Err(malformed(offset, "empty input"));
    }
    if let Some(pos) = bytes.iter().position(|b| !(BIAS..=126).contains(b)) {
        return Err(malformed(offset + pos, format!("byte {:#04x} outside 63..=126", bytes[pos])));
    }
    let digit = |k: usize| (bytes[k] - BIAS) as u64;

    let (n, mut pos) = if bytes[0] != 126 {
        (digit(0), 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(malformed(offset + bytes.len(), "truncated size header"));
        }
        let n = (2..8).fold(0u64, |acc, k| (acc << 6) | digit(k));
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(malformed(offset + bytes.len(), "truncated size header"));
        }
        let n = (1..4).fold(0u64, |acc, k| (acc << 6) | digit(k));
        if n <= 62 {
            return Err(malformed(offset, "non-minimal size header"));
        }
        (n, 4)
    };
    if n > MAX_GRAPH6_ORDER {
        return Err(Error::UnsupportedSize(n, MAX_GRAPH6_ORDER));
    }
    let n = n as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != expected {
        return Err(malformed(
            offset + pos + body.len().min(expected),
            format!("expected {expected} data bytes for n={n}, found {}", body.len()),
        ));
    }

    let mut adjacency = vec![Vec::new(); n];
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if !bits.is_multiple_of(6) {
        let last = body[expected - 1] - BIAS;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            pos += expected - 1;
            return Err(malformed(offset + pos, "nonzero padding bits"));
        }
    }
    for l in &mut adjacency {
        l.sort_unstable();
    }
    Ok(Graph::from_sorted_adjacency(adjacency))
}
