//! Plain-text edge-list format.
//!
//! ```text
//! # optional comments
//! n m
//! u v
//! ...
//! ```
//!
//! The header gives the vertex count `n` and the number of edge lines `m`.
//! Vertices are `0..n`; gaps are not compacted. Lines starting with `#` and
//! blank lines are ignored. Repeated edges collapse to one.

use std::fmt::Write as _;

use super::{Graph, GraphError};
use crate::bitset::MAX_VERTICES;

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    parse_edge_list_with_limit(text, MAX_VERTICES)
}

/// Parses with a vertex cap lower than the default (values above
/// [`MAX_VERTICES`] are clamped to it).
pub fn parse_edge_list_with_limit(text: &str, max_vertices: usize) -> Result<Graph, GraphError> {
    let limit = max_vertices.min(MAX_VERTICES);
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing header `n m`".into(),
    })?;
    let (n, m) = parse_pair(hline, header)?;
    if n == 0 {
        return Err(GraphError::Parse {
            line: hline,
            msg: "n must be at least 1".into(),
        });
    }
    if n > limit {
        return Err(GraphError::Parse {
            line: hline,
            msg: format!("n = {n} exceeds the vertex cap of {limit}"),
        });
    }

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        if edges.len() == m {
            return Err(GraphError::Parse {
                line,
                msg: format!("more than the {m} declared edge lines"),
            });
        }
        let (u, v) = parse_pair(line, body)?;
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("vertex {w} out of range for n = {n}"),
                });
            }
        }
        if u == v {
            return Err(GraphError::Parse {
                line,
                msg: format!("self-loop at vertex {u}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: text.lines().count().max(1),
            msg: format!("expected {m} edge lines, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, body: &str) -> Result<(usize, usize), GraphError> {
    let mut it = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| GraphError::Parse {
            line,
            msg: format!("missing {what}"),
        })?;
        tok.parse::<usize>().map_err(|_| GraphError::Parse {
            line,
            msg: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = it.next() {
        return Err(GraphError::Parse {
            line,
            msg: format!("unexpected trailing token `{extra}`"),
        });
    }
    Ok((a, b))
}

/// Canonical serialization: header, then edges `u v` with `u < v` in
/// lexicographic order, one per line, each line newline-terminated.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_gnp;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let p3 = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(p3.degrees(), vec![1, 2, 1]);

        let single = parse_edge_list("1 0").unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.edge_count(), 0);

        let tri = parse_edge_list("3 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(tri.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn comments_duplicates_and_trailing_blanks() {
        let g = parse_edge_list("# header comment\n3 3\n0 1\n# mid\n1 0\n1 2\n\n\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_edge_list("3 2\n0 1\n1 7").unwrap_err();
        assert_eq!(
            err,
            GraphError::Parse {
                line: 3,
                msg: "vertex 7 out of range for n = 3".into()
            }
        );
        let err = parse_edge_list("3 1\n2 2").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
        let err = parse_edge_list("3 1\n0 x").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 2, .. }));
        let err = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { .. }));
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list_with_limit("9 0", 8).is_err());
    }

    #[test]
    fn serializer_sorts_edges() {
        let g = Graph::from_edges(4, [(3, 2), (0, 3), (1, 0)]).unwrap();
        assert_eq!(serialize_edge_list(&g), "4 3\n0 1\n0 3\n2 3\n");
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..20, p in 0.0f64..=1.0, seed in any::<u64>()) {
            let g = generate_gnp(n, p, seed).unwrap();
            let back = parse_edge_list(&serialize_edge_list(&g)).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
