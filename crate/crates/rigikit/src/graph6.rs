//! graph6 encoding: a size field followed by the upper adjacency triangle in
//! column-major pair order, six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

fn parse_err<T>(offset: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::Parse { offset, reason: reason.into() })
}

fn sixbits(bytes: &[u8], start: usize, count: usize) -> Result<u64> {
    let mut value = 0u64;
    for i in 0..count {
        let pos = start + i;
        let Some(&b) = bytes.get(pos) else {
            return parse_err(pos, "truncated size field");
        };
        if !(63..=126).contains(&b) {
            return parse_err(pos, format!("byte {b} outside 63..126"));
        }
        value = value << 6 | u64::from(b - 63);
    }
    Ok(value)
}

/// Parses one graph6 word (surrounding whitespace and a `>>graph6<<` header are tolerated).
pub fn parse_graph6(text: &str) -> Result<SimpleGraph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match trimmed.strip_prefix(">>graph6<<") {
        Some(rest) => (rest.as_bytes(), 10),
        None => (trimmed.as_bytes(), 0),
    };
    let at = |o: usize| base + o;
    let Some(&first) = bytes.first() else {
        return parse_err(at(0), "empty input");
    };
    let (n, body_start) = if first != 126 {
        (sixbits(bytes, 0, 1).map_err(|_| Error::Parse { offset: at(0), reason: format!("byte {first} outside 63..126") })? as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        let n = sixbits(bytes, 1, 3).map_err(|e| shift(e, base))? as usize;
        if n < 63 {
            return parse_err(at(0), "non-minimal size field");
        }
        (n, 4)
    } else {
        let n = sixbits(bytes, 2, 6).map_err(|e| shift(e, base))? as usize;
        if n < 258_048 {
            return parse_err(at(0), "non-minimal size field");
        }
        (n, 8)
    };
    if n > 10_000 {
        return parse_err(at(0), format!("order {n} exceeds supported maximum"));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    let body = &bytes[body_start..];
    if body.len() != body_len {
        let offset = at(body_start + body.len().min(body_len));
        return parse_err(offset, format!("expected {body_len} body bytes, found {}", body.len()));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return parse_err(at(body_start + i), format!("byte {b} outside 63..126"));
        }
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if bits % 6 != 0 {
        let last = body_len - 1;
        let used = bits - 6 * last;
        if (body[last] - 63) & ((1u8 << (6 - used)) - 1) != 0 {
            return parse_err(at(body_start + last), "nonzero padding bits");
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    SimpleGraph::from_edges(n, &edges)
}

fn shift(e: Error, base: usize) -> Error {
    match e {
        Error::Parse { offset, reason } => Error::Parse { offset: offset + base, reason },
        other => other,
    }
}

/// Minimal-length graph6 word for `g`.
pub fn emit_graph6(g: &SimpleGraph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_words() {
        assert_eq!(parse_graph6("C~").unwrap(), SimpleGraph::complete(4));
        assert_eq!(parse_graph6("D??").unwrap(), SimpleGraph::empty(5));
        let c5 = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(parse_graph6("Dhc").unwrap(), c5);
        assert_eq!(emit_graph6(&SimpleGraph::complete(4)), "C~");
        assert_eq!(emit_graph6(&SimpleGraph::empty(1)), "@");
        assert_eq!(emit_graph6(&c5), "Dhc");
        assert_eq!(emit_graph6(&SimpleGraph::petersen()), "IheA@GUAo");
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_graph6("C~~"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_graph6("C"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6("D?\x20"), Err(Error::Parse { offset: 2, .. })));
        // C5 body with a padding bit set.
        assert!(matches!(parse_graph6("Dhd"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn long_size_field() {
        let g = SimpleGraph::cycle(70);
        let word = emit_graph6(&g);
        assert!(word.starts_with('~'));
        assert_eq!(parse_graph6(&word).unwrap(), g);
    }

    #[test]
    fn header_accepted() {
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), SimpleGraph::complete(4));
    }
}
