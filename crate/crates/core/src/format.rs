//! Text encodings: the plain edge-list format and graph6.
//!
//! Edge list: a header line `n m` followed by `m` lines `u v` with 0-based
//! endpoints. Blank lines and lines starting with `#` are ignored.

use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let g = parse_one_edge_list(&mut lines)?.ok_or_else(|| parse_err(1, "empty input"))?;
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(
            line,
            format!("more than {} edge lines", g.size()),
        ));
    }
    Ok(g)
}

/// Decodes a concatenation of edge lists, each starting with its own header.
pub fn read_edge_lists(text: &str) -> Result<Vec<Graph>> {
    let mut lines = content_lines(text);
    let mut graphs = Vec::new();
    while let Some(g) = parse_one_edge_list(&mut lines)? {
        graphs.push(g);
    }
    if graphs.is_empty() {
        return Err(parse_err(1, "empty input"));
    }
    Ok(graphs)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_one_edge_list<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Option<Graph>> {
    let Some((header_line, header)) = lines.next() else {
        return Ok(None);
    };
    let [n, m] = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines.take(m) {
        let [u, v] = parse_pair(line, text)?;
        let pair = (u, v);
        if edges.contains(&pair) || edges.contains(&(v, u)) {
            return Err(parse_err(line, format!("duplicate edge {u} {v}")));
        }
        // range and loop errors get this line number, connectivity does not
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n,
            }
            .at_line(line));
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u }.at_line(line));
        }
        edges.push(pair);
    }
    if edges.len() != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges)
        .map(Some)
        .map_err(|e| e.at_line(header_line))
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| parse_err(line, "expected two integers"))?;
        tok.parse()
            .map_err(|_| parse_err(line, format!("not a non-negative integer: `{tok}`")))
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(parse_err(line, "expected exactly two integers"));
    }
    Ok(pair)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Encodes `g` as a graph6 string (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
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
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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

/// Decodes one graph6 string. `line` is only used for error reporting.
pub fn parse_graph6_line(text: &str, line: usize) -> Result<Graph> {
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text).trim_end();
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(line, format!("invalid graph6 byte {b:#04x}")));
    }
    let sixbits = |range: std::ops::Range<usize>| -> Result<usize> {
        bytes
            .get(range)
            .ok_or_else(|| parse_err(line, "truncated graph6 order"))
            .map(|s| {
                s.iter()
                    .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
            })
    };
    let (n, body) = match bytes {
        [] => return Err(parse_err(line, "empty graph6 string")),
        [126, 126, ..] => (sixbits(2..8)?, 8),
        [126, ..] => (sixbits(1..4)?, 4),
        [b, ..] => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[body..];
    if data.len() != expected {
        return Err(parse_err(
            line,
            format!(
                "graph6 body for n = {n} needs {expected} bytes, found {}",
                data.len()
            ),
        ));
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(parse_err(line, "non-zero graph6 padding bits"));
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
    Graph::new(n, &edges).map_err(|e| e.at_line(line))
}

/// Decodes a graph6 file: one graph per non-empty line.
pub fn read_graph6(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6_line(l.trim(), i + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_round_trip() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(g.distance(0, 3), 3);
        assert_eq!(write_edge_list(&g), "4 3\n0 1\n1 2\n2 3\n");
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = parse_edge_list("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_edge_list("3 2\n0 1\n# comment\n1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_edge_list("4 2\n0 1\n2 3\n").unwrap_err();
        assert!(
            matches!(err, Error::Parse { line: 1, ref message } if message.contains("disconnected"))
        );
        let err = parse_edge_list("3 3\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_edge_list("3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_edge_list("2 1\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn concatenated_edge_lists() {
        let text = "2 1\n0 1\n\n# next\n3 2\n0 1\n1 2\n";
        let gs = read_edge_lists(text).unwrap();
        assert_eq!(gs.iter().map(Graph::order).collect::<Vec<_>>(), [2, 3]);
        let err = read_edge_lists("2 1\n0 1\n3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(read_edge_lists("# nothing\n").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // standard examples: K_2 = "A_", P_3 with edges 0-1,1-2 = "Bg", K_4 = "C~"
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(to_graph6(&k2), "A_");
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(to_graph6(&p3), "Bg");
        let k4 = parse_graph6_line("C~", 1).unwrap();
        assert!(k4.is_complete() && k4.order() == 4);
        // Petersen graph as printed by nauty's geng/showg
        let petersen = parse_graph6_line("IheA@GUAo", 1).unwrap();
        assert_eq!((petersen.order(), petersen.size()), (10, 15));
        assert!((0..10).all(|v| petersen.degree(v) == 3));
        assert_eq!(petersen.diameter(), 2);
    }

    #[test]
    fn graph6_rejects_malformed_input() {
        assert!(matches!(
            parse_graph6_line("C", 7),
            Err(Error::Parse { line: 7, .. })
        ));
        assert!(parse_graph6_line("A`", 1).is_err()); // padding bit set
        assert!(parse_graph6_line("A ", 1).is_err());
        assert!(parse_graph6_line("A?", 1).is_err()); // disconnected
        let err = read_graph6("A_\nBg\nC~~\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn graph6_long_order_form() {
        let n = 70;
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        let g = Graph::new(n, &edges).unwrap();
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63 + 1, 63 + 6]);
        assert_eq!(parse_graph6_line(&s, 1).unwrap(), g);
        assert_eq!(
            parse_graph6_line(&format!("{GRAPH6_HEADER}{s}"), 1).unwrap(),
            g
        );
    }

    proptest! {
        #[test]
        fn graph6_round_trips(n in 2usize..20, extra in proptest::collection::vec((0usize..20, 0usize..20), 0..40)) {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i / 2, i)).collect();
            for (a, b) in extra {
                let (a, b) = (a % n, b % n);
                if a != b && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
                    edges.push((a, b));
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let s = to_graph6(&g);
            prop_assert_eq!(parse_graph6_line(&s, 1).unwrap(), g.clone());
            prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        }
    }
}
