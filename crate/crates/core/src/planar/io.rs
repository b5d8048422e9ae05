//! Text encoding of embedded graphs.
//!
//! ```text
//! n m
//! u v            (m lines, edge id = line order, 0-based vertices)
//! e e e ...      (n lines, incident edge ids of vertex i, counterclockwise)
//! ```

use std::fmt::Write;

use super::{edge_of, PlanarGraph};
use crate::error::GraphError;

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line: line + 1,
        msg: msg.into(),
    }
}

fn numbers(line: &str, idx: usize) -> Result<Vec<usize>, GraphError> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(idx, format!("expected a non-negative integer, got `{t}`")))
        })
        .collect()
}

/// Parses a graph block from the start of `lines`, returning the graph and
/// the number of lines consumed.
pub fn parse_graph_lines(lines: &[&str]) -> Result<(PlanarGraph, usize), GraphError> {
    let header = lines.first().ok_or_else(|| parse_err(0, "missing header"))?;
    let hv = numbers(header, 0)?;
    let [n, m] = hv[..] else {
        return Err(parse_err(0, "header must be `n m`"));
    };
    if lines.len() < 1 + m + n {
        return Err(parse_err(lines.len(), "unexpected end of input"));
    }
    let mut edges = Vec::with_capacity(m);
    for i in 1..=m {
        let nums = numbers(lines[i], i)?;
        let [u, v] = nums[..] else {
            return Err(parse_err(i, "edge line must be `u v`"));
        };
        edges.push((u, v));
    }
    let mut rot = Vec::with_capacity(n);
    for i in 1 + m..1 + m + n {
        rot.push(numbers(lines[i], i)?);
    }
    let g = PlanarGraph::from_rotations(n, &edges, &rot)?;
    Ok((g, 1 + m + n))
}

/// Strict parse: nothing but blank lines may follow the graph block.
pub fn parse_graph(text: &str) -> Result<PlanarGraph, GraphError> {
    let lines: Vec<&str> = text.lines().collect();
    let (g, used) = parse_graph_lines(&lines)?;
    if let Some(extra) = lines[used..].iter().position(|l| !l.trim().is_empty()) {
        return Err(parse_err(used + extra, "trailing content after graph block"));
    }
    Ok(g)
}

/// Writes the alive edges of `g`, renumbered densely in id order.
pub fn write_graph(g: &PlanarGraph) -> String {
    let mut new_id = vec![usize::MAX; g.edge_count()];
    let alive: Vec<_> = g.alive_edges().collect();
    for (i, &e) in alive.iter().enumerate() {
        new_id[e] = i;
    }
    let mut out = String::new();
    writeln!(out, "{} {}", g.vertex_count(), alive.len()).unwrap();
    for &e in &alive {
        let (u, v) = g.endpoints(e);
        writeln!(out, "{u} {v}").unwrap();
    }
    for v in 0..g.vertex_count() {
        let ids: Vec<String> = g.rotation(v).map(|h| new_id[edge_of(h)].to_string()).collect();
        writeln!(out, "{}", ids.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{generate, GraphKind};

    #[test]
    fn triangle_text() {
        let g = parse_graph("3 3\n0 1\n1 2\n2 0\n0 2\n1 0\n2 1\n").unwrap();
        assert_eq!(g.alive_edge_count(), 3);
        assert_eq!(write_graph(&g), "3 3\n0 1\n1 2\n2 0\n0 2\n1 0\n2 1\n");
    }

    #[test]
    fn isolated_vertex_has_empty_line() {
        let g = parse_graph("2 0\n\n\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_graph("3 3\n0 1\n1 2\n").is_err());
        assert!(parse_graph("2 1\n0 1\n0\n").is_err());
        assert!(parse_graph("2 1\n0 1\n0\n0\n").is_ok());
        assert!(parse_graph("2 1\n0 1\n0\n\n").is_err());
        assert!(parse_graph("2 1\n0 x\n0\n0\n").is_err());
        assert!(parse_graph("2 1\n0 1\n0\n0\nD 0\n").is_err());
    }

    #[test]
    fn generated_graphs_roundtrip() {
        for kind in GraphKind::ALL {
            let g = generate(kind, 30, 5).unwrap();
            let back = parse_graph(&write_graph(&g)).unwrap();
            assert_eq!(back, g);
        }
    }
}
