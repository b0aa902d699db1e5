//! graph6 encoding: size prefix followed by the upper triangle in column
//! order, six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

const HEADER: &str = ">>graph6<<";

fn bad(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

/// Encodes `g` without the optional header.
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.extend_from_slice(&[
            126,
            63 + ((n >> 12) & 63) as u8,
            63 + ((n >> 6) & 63) as u8,
            63 + (n & 63) as u8,
        ]);
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            bits += 1;
            if bits == 6 {
                out.push(63 + acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(63 + (acc << (6 - bits)));
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn decode(line: &str) -> Result<Graph> {
    let s = line.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    if s.is_empty() {
        return Err(bad("empty input"));
    }
    if let Some(&c) = s.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(bad(format!("byte {c} outside the printable range")));
    }
    let (n, body) = if s[0] == 126 {
        if s.len() >= 2 && s[1] == 126 {
            return Err(bad("graphs above 64 vertices are not supported"));
        }
        if s.len() < 4 {
            return Err(bad("truncated size field"));
        }
        let n = ((s[1] - 63) as usize) << 12 | ((s[2] - 63) as usize) << 6 | (s[3] - 63) as usize;
        (n, &s[4..])
    } else {
        ((s[0] - 63) as usize, &s[1..])
    };
    let mut b = GraphBuilder::new(n).map_err(|_| bad(format!("unsupported vertex count {n}")))?;
    let total = n * (n - 1) / 2;
    let expected = total.div_ceil(6);
    if body.len() != expected {
        return Err(bad(format!(
            "expected {expected} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                b.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    if k % 6 != 0 && (body[k / 6] - 63) & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(bad("nonzero padding bits"));
    }
    Ok(b.build())
}

/// Decodes every non-empty line of `text`.
pub fn decode_all(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(decode)
        .collect()
}
