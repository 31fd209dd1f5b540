//! Edge-list and graph6 text formats.

use std::collections::HashMap;

use circarc_core::Graph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected one or two vertex names, found {tokens}")]
    Malformed { line: usize, tokens: usize },
    #[error("line {line}: self-loop at {name}; loops are implicit")]
    SelfLoop { line: usize, name: String },
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),
}

/// Parses whitespace-separated vertex pairs, one per line. `#` starts a
/// comment. A line with a single name declares an isolated vertex. Vertices
/// are numbered by first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut g = Graph::empty(0);
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[..] {
            [] => {}
            [a] => {
                intern(&mut g, &mut index, a);
            }
            [a, b] => {
                if a == b {
                    return Err(ParseError::SelfLoop {
                        line: i + 1,
                        name: a.to_string(),
                    });
                }
                let (u, v) = (intern(&mut g, &mut index, a), intern(&mut g, &mut index, b));
                g.add_edge(u, v).expect("distinct known vertices");
            }
            _ => {
                return Err(ParseError::Malformed {
                    line: i + 1,
                    tokens: tokens.len(),
                })
            }
        }
    }
    Ok(g)
}

fn intern(g: &mut Graph, index: &mut HashMap<String, usize>, name: &str) -> usize {
    *index
        .entry(name.to_string())
        .or_insert_with(|| g.add_vertex(name.to_string()))
}

/// One edge per line; isolated vertices on lines of their own.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let mut touched = vec![false; g.n()];
    for (u, v) in g.edges() {
        touched[u] = true;
        touched[v] = true;
        out.push_str(&format!("{} {}\n", g.name(u), g.name(v)));
    }
    for u in (0..g.n()).filter(|&u| !touched[u]) {
        out.push_str(&format!("{}\n", g.name(u)));
    }
    out
}

pub const GRAPH6_MAX_N: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("only the short form with at most {GRAPH6_MAX_N} vertices is supported")]
    TooLarge,
    #[error("expected {expected} data bytes, found {got}")]
    Length { expected: usize, got: usize },
    #[error("nonzero padding bits")]
    Padding,
}

/// Parses one graph6 line; vertices are named `"0".."n-1"`.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    let (&head, data) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte { offset, byte });
        }
    }
    let n = (head - 63) as usize;
    if n > GRAPH6_MAX_N {
        return Err(Graph6Error::TooLarge);
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if data.len() != expected {
        return Err(Graph6Error::Length {
            expected,
            got: data.len(),
        });
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Graph6Error::Padding);
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                g.add_edge(u, v).expect("in range");
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Graph6Error::TooLarge);
    }
    let mut bits = Vec::with_capacity(n * n / 2);
    for v in 1..n {
        for u in 0..v {
            bits.push(g.adjacent(u, v));
        }
    }
    let mut out = vec![n as u8 + 63];
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for i in 0..6 {
            byte = byte << 1 | u8::from(chunk.get(i).copied().unwrap_or(false));
        }
        out.push(byte + 63);
    }
    Ok(String::from_utf8(out).expect("ascii"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn biclaw_edge_list() {
        let g = parse_edge_list("d f\nf a\nd g\nd h\ng b\nh c").unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.names()[..3], ["d", "f", "a"]);
        assert!(g.adjacent(g.index_of("h").unwrap(), g.index_of("c").unwrap()));
    }

    #[test]
    fn edge_list_details() {
        assert_eq!(parse_edge_list("").unwrap().n(), 0);
        let g = parse_edge_list("a b\na b\n# note\n\nc  # isolated\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 1));
        assert_eq!(
            parse_edge_list("a b\nx x"),
            Err(ParseError::SelfLoop {
                line: 2,
                name: "x".into()
            })
        );
        assert_eq!(
            parse_edge_list("a b c"),
            Err(ParseError::Malformed { line: 1, tokens: 3 })
        );
        let back = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert!(back.same_adjacency(&g) && back.names() == g.names());
    }

    #[test]
    fn graph6_known_strings() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(write_graph6(&c4).unwrap(), "Cl");
        assert_eq!(write_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(write_graph6(&Graph::empty(0)).unwrap(), "?");
        assert!(parse_graph6("Cl").unwrap().same_adjacency(&c4));
    }

    #[test]
    fn graph6_rejects() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(parse_graph6("C"), Err(Graph6Error::Length { .. })));
        assert!(matches!(
            parse_graph6("Clz"),
            Err(Graph6Error::Length { .. })
        ));
        assert!(matches!(
            parse_graph6("C l"),
            Err(Graph6Error::BadByte { .. })
        ));
        // n=3 uses 3 of the 6 bits; "~" sets all of them
        assert_eq!(parse_graph6("B~"), Err(Graph6Error::Padding));
        assert_eq!(parse_graph6("~"), Err(Graph6Error::TooLarge));
    }
}
