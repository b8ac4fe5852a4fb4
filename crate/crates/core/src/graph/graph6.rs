//! graph6 encoding of simple undirected graphs.
//!
//! Layout: `N(n)` followed by the upper triangle of the adjacency matrix
//! read column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits
//! per byte, most significant bit first, each byte offset by 63. `N(n)` is a
//! single byte `n + 63` for `n <= 62`, `~` plus three bytes for
//! `n <= 258047`, and `~~` plus six bytes above that.

use std::io::BufRead;

use super::{Graph, MAX_ORDER};

/// Optional header some tools prepend to graph6 files.
pub const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph6 parse error at byte {offset}: {kind}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Graph6ErrorKind {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} outside the graph6 alphabet")]
    BadByte(u8),
    #[error("input ends inside the bit field")]
    Truncated,
    #[error("{0} trailing bytes after the bit field")]
    Trailing(usize),
    #[error("order {0} exceeds the supported maximum")]
    TooLarge(u64),
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    encode_order(n as u64, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn encode_order(n: u64, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Decodes one graph6 line. A trailing newline (LF or CRLF) and a leading
/// `>>graph6<<` header are tolerated.
pub fn decode(line: &str) -> Result<Graph, Graph6Error> {
    let mut bytes = line.as_bytes();
    let mut base = 0;
    if let Some(rest) = line.strip_prefix(HEADER) {
        bytes = rest.as_bytes();
        base = HEADER.len();
    }
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    let err = |offset: usize, kind| Graph6Error {
        offset: base + offset,
        kind,
    };
    if bytes.is_empty() {
        return Err(err(0, Graph6ErrorKind::Empty));
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(pos, Graph6ErrorKind::BadByte(bytes[pos])));
    }
    let (n, header_len) = decode_order(bytes).map_err(|(off, kind)| err(off, kind))?;
    if n > MAX_ORDER as u64 {
        return Err(err(0, Graph6ErrorKind::TooLarge(n)));
    }
    let n = n as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let body = &bytes[header_len..];
    let need = nbits.div_ceil(6);
    if body.len() < need {
        return Err(err(bytes.len(), Graph6ErrorKind::Truncated));
    }
    if body.len() > need {
        return Err(err(header_len + need, Graph6ErrorKind::Trailing(body.len() - need)));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_order(bytes: &[u8]) -> Result<(u64, usize), (usize, Graph6ErrorKind)> {
    let field = |from: usize, count: usize| -> Result<u64, (usize, Graph6ErrorKind)> {
        if bytes.len() < from + count {
            return Err((bytes.len(), Graph6ErrorKind::Truncated));
        }
        Ok(bytes[from..from + count]
            .iter()
            .fold(0u64, |acc, &b| (acc << 6) | (b - 63) as u64))
    };
    if bytes[0] != 126 {
        Ok(((bytes[0] - 63) as u64, 1))
    } else if bytes.get(1) != Some(&126) {
        Ok((field(1, 3)?, 4))
    } else {
        Ok((field(2, 6)?, 8))
    }
}

/// One decoded line of a graph6 stream.
#[derive(Debug)]
pub struct Record {
    /// 1-based line number.
    pub line: usize,
    pub graph: Result<Graph, Graph6Error>,
}

/// Reads graph6 lines, skipping blank lines. I/O errors end the iteration
/// with an `Err`.
pub fn read_all<R: BufRead>(reader: R) -> impl Iterator<Item = std::io::Result<Record>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e)),
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => Some(Ok(Record {
            line: i + 1,
            graph: decode(l.trim_end()),
        })),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use proptest::prelude::*;

    #[test]
    fn single_vertex() {
        assert_eq!(encode(&Graph::new(1)), "@");
        assert_eq!(encode(&Graph::new(0)), "?");
        assert_eq!(decode("@").unwrap(), Graph::new(1));
    }

    #[test]
    fn known_strings() {
        // Published examples: the 5-vertex graph with edges 02 04 13 34 is "DQc";
        // the Petersen graph in its standard labelling is "IheA@GUAo".
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(encode(&named::petersen()), "IheA@GUAo");
        assert_eq!(decode("IheA@GUAo").unwrap(), named::petersen());
    }

    #[test]
    fn long_order_prefix() {
        let g = named::cycle(100);
        let s = encode(&g);
        assert!(s.starts_with("~?@chCGGC@"));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        let e = decode("garbage\x01").unwrap_err();
        assert_eq!(e.offset, 7);
        assert!(matches!(e.kind, Graph6ErrorKind::BadByte(0x01)));
        assert!(matches!(decode("D").unwrap_err().kind, Graph6ErrorKind::Truncated));
        assert!(matches!(decode("~?").unwrap_err().kind, Graph6ErrorKind::Truncated));
        assert!(matches!(decode("@??").unwrap_err().kind, Graph6ErrorKind::Trailing(2)));
        assert!(matches!(decode("").unwrap_err().kind, Graph6ErrorKind::Empty));
    }

    #[test]
    fn header_and_newline_are_tolerated() {
        assert_eq!(decode(">>graph6<<DQc\n").unwrap().size(), 4);
    }

    #[test]
    fn exhaustive_round_trip_up_to_order_6() {
        for n in 0..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let s = encode(&g);
                let back = decode(&s).unwrap();
                assert_eq!(back, g);
                assert_eq!(encode(&back), s);
            }
        }
    }

    proptest! {
        #[test]
        fn random_round_trip(n in 0usize..=64, seed in any::<u64>(), density in 0.0f64..1.0) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = Graph::new(n);
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_bool(density) {
                        g.add_edge(i, j);
                    }
                }
            }
            let s = encode(&g);
            prop_assert_eq!(decode(&s).unwrap(), g);
        }
    }
}
