//! planar_code: an optional `>>planar_code<<` header, then per graph the
//! vertex count followed by each vertex's clockwise neighbour list (1-based),
//! every list terminated by 0. Counts above 255 use a leading 0 byte and
//! little-endian 16-bit entries.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::planarity::Embedding;

const HEADER: &[u8] = b">>planar_code<<";
const HEADER_LE: &[u8] = b">>planar_code le<<";

fn bad(msg: impl Into<String>) -> Error {
    Error::PlanarCode(msg.into())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    at: usize,
    wide: bool,
}

impl Cursor<'_> {
    fn byte(&mut self) -> Result<u8> {
        let b = *self
            .bytes
            .get(self.at)
            .ok_or_else(|| bad("unexpected end of input"))?;
        self.at += 1;
        Ok(b)
    }

    fn entry(&mut self) -> Result<usize> {
        if self.wide {
            let lo = self.byte()? as usize;
            let hi = self.byte()? as usize;
            Ok(lo | hi << 8)
        } else {
            Ok(self.byte()? as usize)
        }
    }
}

/// Reads every graph in `bytes` together with its rotation system.
pub fn read(bytes: &[u8]) -> Result<Vec<(Graph, Embedding)>> {
    let start = if bytes.starts_with(HEADER_LE) {
        HEADER_LE.len()
    } else if bytes.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let mut cur = Cursor {
        bytes,
        at: start,
        wide: false,
    };
    let mut out = Vec::new();
    while cur.at < bytes.len() {
        cur.wide = false;
        let mut n = cur.byte()? as usize;
        if n == 0 {
            cur.wide = true;
            n = cur.entry()?;
        }
        let mut b =
            GraphBuilder::new(n).map_err(|_| bad(format!("unsupported vertex count {n}")))?;
        let mut rotation = vec![Vec::new(); n];
        for (v, rot) in rotation.iter_mut().enumerate() {
            loop {
                let w = cur.entry()?;
                if w == 0 {
                    break;
                }
                if w > n {
                    return Err(bad(format!(
                        "neighbour {w} of vertex {} out of range",
                        v + 1
                    )));
                }
                if w - 1 == v {
                    return Err(bad(format!("loop at vertex {w}")));
                }
                if rot.contains(&(w - 1)) {
                    return Err(bad(format!("repeated edge {}-{w}", v + 1)));
                }
                rot.push(w - 1);
            }
        }
        for (v, rot) in rotation.iter().enumerate() {
            for &w in rot {
                if !rotation[w].contains(&v) {
                    return Err(bad(format!(
                        "edge {}-{} listed in one direction only",
                        v + 1,
                        w + 1
                    )));
                }
                b.add_edge(v, w)?;
            }
        }
        out.push((b.build(), Embedding { rotation }));
    }
    Ok(out)
}

/// Writes graphs with their rotation systems, header included.
pub fn write(graphs: &[(&Graph, &Embedding)]) -> Vec<u8> {
    let mut out = HEADER.to_vec();
    for (g, emb) in graphs {
        out.push(g.order() as u8);
        for rot in &emb.rotation {
            out.extend(rot.iter().map(|&w| (w + 1) as u8));
            out.push(0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::planar_embedding;

    #[test]
    fn round_trip_k4() {
        let g = Graph::complete(4).unwrap();
        let emb = planar_embedding(&g).unwrap();
        let bytes = write(&[(&g, &emb)]);
        let back = read(&bytes).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].0, g);
        assert_eq!(back[0].1, emb);
    }

    #[test]
    fn hand_written_triangle() {
        let mut bytes = HEADER.to_vec();
        bytes.extend_from_slice(&[3, 2, 3, 0, 3, 1, 0, 1, 2, 0]);
        let gs = read(&bytes).unwrap();
        assert_eq!(gs[0].0, Graph::complete(3).unwrap());
        assert!(gs[0].1.check(&gs[0].0).is_some());
    }

    #[test]
    fn rejects_asymmetric_and_truncated() {
        assert!(read(&[3, 2, 0, 0, 0]).is_err());
        assert!(read(&[3, 2, 3, 0]).is_err());
        assert!(read(&[2, 3, 0, 0]).is_err());
    }
}
