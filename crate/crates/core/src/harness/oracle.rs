//! Ground truth by graph search, cross-checked by an offline union-find
//! replay of the trace in reverse.

use std::collections::VecDeque;

use super::trace::{Op, Trace, TraceError};
use crate::planar::PlanarGraph;
use crate::union_find::{Dsu, UnionFind};

/// Outcome of one operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpResult {
    /// Whether the deletion split a component, and the component count
    /// afterwards when known.
    Deleted {
        critical: bool,
        components: Option<usize>,
    },
    Answer(bool),
}

pub fn answers(results: &[OpResult]) -> Vec<bool> {
    results
        .iter()
        .filter_map(|r| match r {
            OpResult::Answer(a) => Some(*a),
            _ => None,
        })
        .collect()
}

/// After every deletion, searches the component of one endpoint; if the
/// other endpoint is not reached, the searched side gets a new label.
pub fn oracle_run(g: &PlanarGraph, trace: &Trace) -> Result<Vec<OpResult>, TraceError> {
    trace.validate(g)?;
    let mut g = g.clone();
    let (mut label, mut count) = g.components();
    let mut next = g.vertex_count();
    let mut seen = vec![0u32; g.vertex_count()];
    let mut stamp = 0u32;
    let mut queue = VecDeque::new();
    let mut out = Vec::with_capacity(trace.ops.len());
    for op in &trace.ops {
        match *op {
            Op::Delete(e) => {
                let (u, v) = g.endpoints(e);
                g.delete_edge(e);
                stamp += 1;
                seen[u] = stamp;
                queue.clear();
                queue.push_back(u);
                let mut side = vec![u];
                let mut reached = u == v;
                while let Some(x) = queue.pop_front() {
                    for y in g.neighbors(x) {
                        if seen[y] != stamp {
                            seen[y] = stamp;
                            reached |= y == v;
                            side.push(y);
                            queue.push_back(y);
                        }
                    }
                }
                if !reached {
                    for x in side {
                        label[x] = next;
                    }
                    next += 1;
                    count += 1;
                }
                out.push(OpResult::Deleted {
                    critical: !reached,
                    components: Some(count),
                });
            }
            Op::Query(u, v) => out.push(OpResult::Answer(label[u] == label[v])),
        }
    }
    Ok(out)
}

/// Independent oracle: unions the edges that survive the whole trace, then
/// walks the trace backwards re-inserting deleted edges.
pub fn offline_oracle(g: &PlanarGraph, trace: &Trace) -> Result<Vec<OpResult>, TraceError> {
    trace.validate(g)?;
    let mut alive: Vec<bool> = (0..g.edge_count()).map(|e| g.is_alive(e)).collect();
    for op in &trace.ops {
        if let Op::Delete(e) = *op {
            alive[e] = false;
        }
    }
    let mut dsu = Dsu::new(g.vertex_count().max(1));
    for e in (0..g.edge_count()).filter(|&e| alive[e]) {
        let (u, v) = g.endpoints(e);
        dsu.union(u, v);
    }
    let empty = g.vertex_count() == 0;
    let mut out = vec![OpResult::Answer(false); trace.ops.len()];
    for (i, op) in trace.ops.iter().enumerate().rev() {
        out[i] = match *op {
            Op::Query(u, v) => OpResult::Answer(dsu.find(u) == dsu.find(v)),
            Op::Delete(e) => {
                let (u, v) = g.endpoints(e);
                let components = if empty { 0 } else { dsu.component_count() };
                let critical = dsu.find(u) != dsu.find(v);
                dsu.union(u, v);
                OpResult::Deleted {
                    critical,
                    components: Some(components),
                }
            }
        };
    }
    Ok(out)
}
