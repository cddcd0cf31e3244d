//! graph6 encoding.
//!
//! The upper triangle is read column by column (`(0,1), (0,2), (1,2), (0,3), ...`),
//! packed into big-endian 6-bit groups and offset by 63. Vertex counts up to
//! 62 take one byte; larger counts use `~` followed by three 6-bit groups.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";
const BIAS: u8 = 63;

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode(s: &str) -> Result<Graph> {
    let trimmed = s.trim_end_matches(['\n', '\r']);
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let group = |i: usize| -> Result<u8> {
        let c = *body
            .get(i)
            .ok_or_else(|| parse_err(base + i, "unexpected end of input"))?;
        if !(63..=126).contains(&c) {
            return Err(parse_err(
                base + i,
                format!("byte {c:#04x} outside graph6 range"),
            ));
        }
        Ok(c - BIAS)
    };
    if body.is_empty() {
        return Err(parse_err(base, "empty graph6 string"));
    }
    let (n, start) = if body[0] == b'~' {
        if body.get(1) == Some(&b'~') {
            return Err(parse_err(
                base + 1,
                "vertex counts above 258047 are unsupported",
            ));
        }
        let mut n = 0usize;
        for i in 1..4 {
            n = (n << 6) | group(i)? as usize;
        }
        (n, 4)
    } else {
        (group(0)? as usize, 1)
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(parse_err(
            base,
            format!("vertex count {n} outside 1..={MAX_VERTICES}"),
        ));
    }
    let pairs = n * (n - 1) / 2;
    let groups = pairs.div_ceil(6);
    let expected = start + groups;
    if body.len() != expected {
        return Err(parse_err(
            base + body.len().min(expected),
            format!("expected {expected} bytes, found {}", body.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let value = group(start + k / 6)?;
            if value >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if pairs % 6 != 0 {
        let last = group(start + groups - 1)?;
        let pad = 6 - pairs % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + start + groups - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&encode(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        decode(&s).map_err(serde::de::Error::custom)
    }
}
