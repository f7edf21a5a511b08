//! graph6 encoding for graphs with at most 62 vertices.
//!
//! Layout: one size byte `n + 63`, then the upper triangle of the adjacency
//! matrix read column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed
//! six bits per character, most significant bit first, each offset by 63.

use super::Graph;
use crate::error::{Error, Result};

const MAX_VERTICES: usize = 62;

pub fn serialize_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if n > MAX_VERTICES {
        return Err(Error::size_bound("graph6 vertex count", n, MAX_VERTICES));
    }
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            chunk = (chunk << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!(
            "character {:?} outside the range 63..126",
            b as char
        )));
    }
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    if head == 126 {
        return Err(Error::Graph6(
            "multi-byte size header (n > 62) is not supported".into(),
        ));
    }
    let n = (head - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "length mismatch: {n} vertices need {expected} data characters, found {}",
            body.len()
        )));
    }

    let bit = |i: usize| (body[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    let mut g = Graph::empty(n);
    let mut i = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(i) {
                g.set_edge(u, v);
            }
            i += 1;
        }
    }
    if (nbits..expected * 6).any(bit) {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    Ok(g)
}
