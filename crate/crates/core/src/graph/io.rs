//! graph6 and JSON interchange, plus a small shorthand parser for named
//! families (`K4`, `C5`, `P3`, `E5`, `K2,2,3`, unions joined with `+`).

use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder, GraphError};

const HEADER: &str = ">>graph6<<";

/// Encodes `g` in graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
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
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Decodes one graph6 string. A leading `>>graph6<<` header and
/// surrounding whitespace are accepted.
pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let bad = |m: &str| GraphError::Graph6(m.to_string());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, rest) = match bytes {
        [] => return Err(bad("empty")),
        [126, 126, tail @ ..] => {
            if tail.len() < 6 {
                return Err(bad("truncated order"));
            }
            let n = tail[..6].iter().fold(0, |a, &b| (a << 6) | six(b));
            (n, &tail[6..])
        }
        [126, tail @ ..] => {
            if tail.len() < 3 {
                return Err(bad("truncated order"));
            }
            let n = tail[..3].iter().fold(0, |a, &b| (a << 6) | six(b));
            (n, &tail[3..])
        }
        [b, tail @ ..] => (six(*b), tail),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if rest.len() != bits.div_ceil(6) {
        return Err(bad(&format!("expected {} data bytes for n = {n}, found {}", bits.div_ceil(6), rest.len())));
    }
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(rest[k / 6]);
            if (byte >> (5 - k % 6)) & 1 == 1 {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        if six(*rest.last().expect("nonempty")) & ((1 << pad) - 1) != 0 {
            return Err(bad("nonzero padding bits"));
        }
    }
    Ok(b.build())
}

/// JSON form `{"n": int, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        let pairs: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edge_list(j.n, &pairs)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("serialisable")
}

pub fn from_json(s: &str) -> Result<Graph, GraphError> {
    let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))?;
    Graph::try_from(j)
}

/// Parses inline JSON, a named shorthand, or a graph6 string, in that order.
pub fn parse_graph(s: &str) -> Result<Graph, GraphError> {
    let t = s.trim();
    if t.starts_with('{') {
        return from_json(t);
    }
    if let Some(g) = parse_named(t) {
        return Ok(g);
    }
    from_graph6(t).map_err(|_| GraphError::Unrecognised(t.to_string()))
}

fn parse_named(s: &str) -> Option<Graph> {
    if s.contains('+') {
        let mut acc: Option<Graph> = None;
        for part in s.split('+') {
            let g = parse_named(part.trim())?;
            acc = Some(match acc {
                None => g,
                Some(a) => a.disjoint_union(&g),
            });
        }
        return acc;
    }
    let (kind, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit() || c == '_')?);
    let rest = rest.trim_start_matches('_').trim_start_matches('{').trim_end_matches('}');
    let nums: Vec<usize> = rest.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    match (kind, nums.as_slice()) {
        ("K", [n]) => Some(Graph::complete(*n)),
        ("K", sizes) => Graph::complete_multipartite(sizes).ok(),
        ("C", [n]) if *n >= 3 => Some(Graph::cycle(*n)),
        ("P", [n]) => Some(Graph::path(*n)),
        ("E", [n]) => Some(Graph::empty(*n)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        assert_eq!(from_graph6(">>graph6<<Dhc\n").unwrap(), Graph::cycle(5));
    }

    #[test]
    fn large_order_header() {
        let g = Graph::path(70);
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63 + 1, 63 + 6]);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~~").is_err());
        // n = 3 has 3 bits; padding must be zero
        assert!(from_graph6("BA").is_err());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let g = Graph::cycle(4);
        assert_eq!(to_json(&g), r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#);
        assert_eq!(from_json(&to_json(&g)).unwrap(), g);
        assert!(matches!(from_json(r#"{"n":2,"edges":[[0,0]]}"#), Err(GraphError::Loop(0))));
        assert!(matches!(from_json("{"), Err(GraphError::Json(_))));
    }

    #[test]
    fn named_shorthands() {
        assert_eq!(parse_graph("K4").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph("C5").unwrap(), Graph::cycle(5));
        assert_eq!(parse_graph("K2,2,3").unwrap(), Graph::complete_multipartite(&[2, 2, 3]).unwrap());
        assert_eq!(parse_graph("K_{1,2}").unwrap().degree_sequence().as_slice(), &[1, 1, 2]);
        assert_eq!(parse_graph("P3+K2").unwrap().component_orders(), vec![2, 3]);
        assert_eq!(parse_graph("Dhc").unwrap(), Graph::cycle(5));
        assert!(parse_graph("Q9").is_err());
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..20, bits in proptest::collection::vec(any::<bool>(), 190)) {
            let mut b = GraphBuilder::new(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] { b.add_edge(u, v).unwrap(); }
                    k += 1;
                }
            }
            let g = b.build();
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
}
