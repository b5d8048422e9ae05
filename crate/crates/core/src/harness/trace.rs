//! Deletion traces: `D <edge>` and `Q <u> <v>` lines. Blank lines and lines
//! starting with `#` are ignored. A bundle is a graph block followed by a
//! trace.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::GraphError;
use crate::planar::{parse_graph_lines, write_graph, PlanarGraph};
use crate::{EdgeId, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Delete(EdgeId),
    Query(VertexId, VertexId),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub ops: Vec<Op>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("operation {pos}: {msg}")]
    Invalid { pos: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl Trace {
    pub fn parse(text: &str) -> Result<Self, TraceError> {
        let lines: Vec<&str> = text.lines().collect();
        Self::parse_lines(&lines, 0)
    }

    fn parse_lines(lines: &[&str], offset: usize) -> Result<Self, TraceError> {
        let mut ops = Vec::new();
        for (i, raw) in lines.iter().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| TraceError::Parse {
                line: offset + i + 1,
                msg,
            };
            let mut it = line.split_whitespace();
            let tag = it.next().unwrap();
            let nums: Vec<usize> = it
                .map(|t| t.parse().map_err(|_| err(format!("bad number `{t}`"))))
                .collect::<Result<_, _>>()?;
            ops.push(match (tag, nums.as_slice()) {
                ("D", [e]) => Op::Delete(*e),
                ("Q", [u, v]) => Op::Query(*u, *v),
                _ => return Err(err(format!("expected `D e` or `Q u v`, got `{line}`"))),
            });
        }
        Ok(Self { ops })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for op in &self.ops {
            match op {
                Op::Delete(e) => writeln!(s, "D {e}").unwrap(),
                Op::Query(u, v) => writeln!(s, "Q {u} {v}").unwrap(),
            }
        }
        s
    }

    /// Every deleted edge must be alive at its position and every query
    /// must name existing vertices.
    pub fn validate(&self, g: &PlanarGraph) -> Result<(), TraceError> {
        let mut alive: Vec<bool> = (0..g.edge_count()).map(|e| g.is_alive(e)).collect();
        let n = g.vertex_count();
        for (pos, op) in self.ops.iter().enumerate() {
            match *op {
                Op::Delete(e) => {
                    if e >= alive.len() {
                        return Err(TraceError::Invalid {
                            pos,
                            msg: format!("edge {e} out of range"),
                        });
                    }
                    if !alive[e] {
                        return Err(TraceError::Invalid {
                            pos,
                            msg: format!("edge {e} deleted twice"),
                        });
                    }
                    alive[e] = false;
                }
                Op::Query(u, v) => {
                    if u >= n || v >= n {
                        return Err(TraceError::Invalid {
                            pos,
                            msg: format!("query {u} {v} out of range"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn delete_count(&self) -> usize {
        self.ops.iter().filter(|o| matches!(o, Op::Delete(_))).count()
    }

    pub fn query_count(&self) -> usize {
        self.ops.len() - self.delete_count()
    }
}

pub fn parse_bundle(text: &str) -> Result<(PlanarGraph, Trace), TraceError> {
    let lines: Vec<&str> = text.lines().collect();
    let (g, used) = parse_graph_lines(&lines)?;
    let trace = Trace::parse_lines(&lines[used..], used)?;
    Ok((g, trace))
}

pub fn write_bundle(g: &PlanarGraph, t: &Trace) -> String {
    let mut s = write_graph(g);
    s.push_str(&t.to_text());
    s
}

pub fn format_answers(answers: &[bool]) -> String {
    answers.iter().map(|&a| if a { "1\n" } else { "0\n" }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{generate, GraphKind};

    #[test]
    fn roundtrip() {
        let t = Trace {
            ops: vec![Op::Delete(3), Op::Query(0, 2), Op::Delete(0)],
        };
        assert_eq!(Trace::parse(&t.to_text()).unwrap(), t);
        assert_eq!(t.delete_count(), 2);
        assert_eq!(t.query_count(), 1);
    }

    #[test]
    fn comments_and_errors() {
        let t = Trace::parse("# header\n\nD 1\n  Q 0 1  \n").unwrap();
        assert_eq!(t.ops.len(), 2);
        assert!(matches!(Trace::parse("X 1"), Err(TraceError::Parse { line: 1, .. })));
        assert!(matches!(Trace::parse("D 1 2"), Err(TraceError::Parse { .. })));
        assert!(matches!(Trace::parse("Q -1 2"), Err(TraceError::Parse { .. })));
    }

    #[test]
    fn validation() {
        let g = generate(GraphKind::Cycle, 3, 0).unwrap();
        let ok = Trace::parse("D 0\nQ 0 2\nD 1").unwrap();
        ok.validate(&g).unwrap();
        let twice = Trace::parse("D 0\nD 0").unwrap();
        assert!(matches!(twice.validate(&g), Err(TraceError::Invalid { pos: 1, .. })));
        let far = Trace::parse("Q 0 3").unwrap();
        assert!(matches!(far.validate(&g), Err(TraceError::Invalid { pos: 0, .. })));
    }

    #[test]
    fn bundle_roundtrip() {
        let g = generate(GraphKind::Grid, 9, 0).unwrap();
        let t = Trace::parse("D 2\nQ 0 8").unwrap();
        let (g2, t2) = parse_bundle(&write_bundle(&g, &t)).unwrap();
        assert_eq!(g2, g);
        assert_eq!(t2, t);
    }
}
