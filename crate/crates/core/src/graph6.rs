//! graph6 encoding.
//!
//! A token is a header encoding `n` followed by the upper triangle of the
//! adjacency matrix, read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! six bits per byte, each byte offset by 63. The last byte is zero-padded.
//!
//! Orders up to 62 use a single header byte `n + 63`. Orders 63..=258047 use
//! the four byte form `~` followed by 18 bits of `n`; P_3-graphs of dense
//! 8-vertex hosts reach 168 vertices and their canonical keys need it.

use crate::error::Graph6Error;
use crate::graph::Graph;

/// Largest order with a single-byte header.
pub const SHORT_HEADER_MAX: usize = 62;
/// Largest order this module will encode.
pub const MAX_ORDER: usize = 258_047;

const BIAS: u8 = 63;

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 token. Surrounding whitespace is not accepted; trim
/// lines before calling.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&byte) {
            return Err(Graph6Error::ByteOutOfRange { offset, byte });
        }
    }
    let (n, start) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::Length { n: 0, expected: 4, found: bytes.len() });
        }
        if bytes[1] == 126 {
            // eight byte header, n > 258047
            return Err(Graph6Error::Unsupported(MAX_ORDER + 1));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        (n, 4)
    };

    let expected = start + payload_len(n);
    if bytes.len() != expected {
        return Err(Graph6Error::Length { n, expected, found: bytes.len() });
    }

    let mut g = Graph::new(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[start + bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices are in range and distinct");
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = bytes[expected - 1] - BIAS;
        let pad = 6 - bit % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding { offset: expected - 1 });
        }
    }
    Ok(g)
}

/// Encodes `g` as a graph6 token.
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_ORDER {
        return Err(Graph6Error::Unsupported(n));
    }
    let mut out = Vec::with_capacity(4 + payload_len(n));
    if n <= SHORT_HEADER_MAX {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.extend([12, 6, 0].map(|shift| ((n >> shift) & 63) as u8 + BIAS));
    }
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses newline separated graph6 tokens, skipping blank lines. Errors carry
/// the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| (i + 1, e)))
        .collect()
}
