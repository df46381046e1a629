//! graph6 codec.
//!
//! The order is written as `n + 63` for `n <= 62`, otherwise as `126`
//! followed by three 6-bit groups. The upper triangle of the adjacency
//! matrix follows in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`),
//! packed six bits per byte, each byte offset by 63.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

const OFFSET: u8 = 63;

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn decode(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let sixes = |b: &[u8]| -> Result<Vec<u8>> {
        b.iter()
            .map(|&c| {
                if (63..=126).contains(&c) {
                    Ok(c - OFFSET)
                } else {
                    Err(Error::Graph6(format!("invalid byte 0x{c:02x}")))
                }
            })
            .collect()
    };
    let (n, body) = match bytes.first() {
        None => return Err(Error::Graph6("empty input".into())),
        Some(&126) => {
            if bytes.get(1) == Some(&126) {
                return Err(Error::Graph6("orders above 258047 are not supported".into()));
            }
            let head = bytes
                .get(1..4)
                .ok_or_else(|| Error::Graph6("truncated order header".into()))?;
            let h = sixes(head)?;
            let n = (h[0] as usize) << 12 | (h[1] as usize) << 6 | h[2] as usize;
            if n < 63 {
                return Err(Error::Graph6(format!("non-minimal order header for n={n}")));
            }
            (n, &bytes[4..])
        }
        Some(&c) if (63..=125).contains(&c) => ((c - OFFSET) as usize, &bytes[1..]),
        Some(&c) => return Err(Error::Graph6(format!("invalid order byte 0x{c:02x}"))),
    };
    if n > MAX_ORDER {
        return Err(Error::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() < need {
        return Err(Error::Graph6(format!("truncated: expected {need} data bytes, found {}", body.len())));
    }
    if body.len() > need {
        return Err(Error::Graph6(format!("{} trailing bytes", body.len() - need)));
    }
    let data = sixes(body)?;
    let bit = |k: usize| data[k / 6] >> (5 - k % 6) & 1 == 1;
    if (nbits..need * 6).any(bit) {
        return Err(Error::Graph6("nonzero padding bits".into()));
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
