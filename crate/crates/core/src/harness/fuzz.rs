use rand::seq::SliceRandom;
use rand::Rng;

use super::oracle::{oracle_run, OpResult};
use super::run::{first_mismatch, run, Algo, RunOptions};
use super::trace::{Op, Trace};
use crate::planar::{generate, GraphKind, PlanarGraph};
use crate::rng::{seeded_rng, Stream};

/// Deletes every edge in random order. After each deletion the endpoints of
/// the deleted edge and `extra` random pairs are queried.
pub fn random_trace(g: &PlanarGraph, seed: u64, extra: usize) -> Trace {
    let mut rng = seeded_rng(seed, Stream::Trace);
    let mut order: Vec<_> = g.alive_edges().collect();
    order.shuffle(&mut rng);
    let n = g.vertex_count();
    let mut ops = Vec::with_capacity(order.len() * (2 + extra));
    for e in order {
        ops.push(Op::Delete(e));
        let (u, v) = g.endpoints(e);
        ops.push(Op::Query(u, v));
        for _ in 0..extra {
            ops.push(Op::Query(rng.gen_range(0..n), rng.gen_range(0..n)));
        }
    }
    Trace { ops }
}

/// Deletes every edge by repeated halving: each component is cut between
/// the first half of its BFS order and the rest, then both parts are
/// handled the same way. Every vertex thus lies in about `log2 n` split
/// components of comparable halves. With `queries`, the endpoints of the
/// last edge of every cut are queried.
pub fn bisection_trace(g: &PlanarGraph, queries: bool) -> Trace {
    let n = g.vertex_count();
    let mut h = g.clone();
    let (label, _) = h.components();
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        groups[label[v]].push(v);
    }
    let mut stack: Vec<Vec<usize>> = groups.into_iter().filter(|s| s.len() > 1).collect();
    stack.reverse();
    let mut stamp = vec![0u32; n];
    let mut tick = 0u32;
    let mut ops = Vec::new();
    while let Some(set) = stack.pop() {
        if set.len() < 2 {
            continue;
        }
        tick += 1;
        let mut order = vec![set[0]];
        stamp[set[0]] = tick;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for w in h.neighbors(v) {
                if stamp[w] != tick {
                    stamp[w] = tick;
                    order.push(w);
                }
            }
        }
        let half = order.len().div_ceil(2);
        tick += 1;
        for &v in &order[..half] {
            stamp[v] = tick;
        }
        let mut cut: Vec<usize> = order[..half]
            .iter()
            .flat_map(|&v| h.rotation(v).filter(|&x| stamp[h.head(x)] != tick).map(|x| x / 2).collect::<Vec<_>>())
            .collect();
        cut.sort_unstable();
        cut.dedup();
        for &e in &cut {
            ops.push(Op::Delete(e));
            h.delete_edge(e);
        }
        if queries {
            if let Some(&e) = cut.last() {
                let (u, v) = h.endpoints(e);
                ops.push(Op::Query(u, v));
            }
        }
        // the prefix stays connected; the rest may fall apart
        let rest: Vec<usize> = order[half..].to_vec();
        tick += 1;
        let mut parts = Vec::new();
        for &s in &rest {
            if stamp[s] == tick {
                continue;
            }
            stamp[s] = tick;
            let mut comp = vec![s];
            let mut j = 0;
            while j < comp.len() {
                let v = comp[j];
                j += 1;
                for w in h.neighbors(v) {
                    if stamp[w] != tick {
                        stamp[w] = tick;
                        comp.push(w);
                    }
                }
            }
            parts.push(comp);
        }
        stack.push(order[..half].to_vec());
        stack.extend(parts);
    }
    Trace { ops }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub graph: PlanarGraph,
    pub trace: Trace,
    /// Index of the failing operation (the last one after minimization).
    pub position: usize,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub enum FuzzOutcome {
    Pass,
    Mismatch(Counterexample),
}

impl FuzzOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, FuzzOutcome::Pass)
    }
}

fn describe(r: Option<&OpResult>) -> String {
    match r {
        Some(OpResult::Answer(a)) => format!("answer {}", *a as u8),
        Some(OpResult::Deleted {
            critical,
            components,
        }) => match components {
            Some(c) => format!("critical {} with {c} components", *critical as u8),
            None => format!("critical {}", *critical as u8),
        },
        None => "nothing".into(),
    }
}

/// First disagreement between `algo` and the oracle on `trace`.
pub fn check(algo: Algo, g: &PlanarGraph, trace: &Trace, opts: &RunOptions) -> Option<(usize, String)> {
    let expected = oracle_run(g, trace).expect("generated traces are valid");
    match run(algo, g, trace, opts) {
        Err(e) => Some((trace.ops.len().saturating_sub(1), format!("run failed: {e}"))),
        Ok(out) => first_mismatch(&expected, &out.results).map(|i| {
            (
                i,
                format!(
                    "{:?}: expected {}, got {}",
                    trace.ops[i],
                    describe(expected.get(i)),
                    describe(out.results.get(i))
                ),
            )
        }),
    }
}

/// Cuts the trace after the first mismatch, then greedily drops chunks of
/// earlier operations while the last operation still mismatches.
pub fn minimize(algo: Algo, g: &PlanarGraph, trace: &Trace, opts: &RunOptions, budget: usize) -> Option<Counterexample> {
    let (pos, detail) = check(algo, g, trace, opts)?;
    let mut ops = trace.ops[..=pos].to_vec();
    let mut detail = detail;
    let mut attempts = 0;
    let mut chunk = (ops.len() / 2).max(1);
    while attempts < budget && ops.len() > 1 {
        let mut changed = false;
        let mut start = 0;
        while start + 1 < ops.len() && attempts < budget {
            let end = (start + chunk).min(ops.len() - 1);
            let mut cand = ops[..start].to_vec();
            cand.extend_from_slice(&ops[end..]);
            attempts += 1;
            let t = Trace { ops: cand };
            match check(algo, g, &t, opts) {
                Some((p, d)) if p + 1 == t.ops.len() => {
                    ops = t.ops;
                    detail = d;
                    changed = true;
                }
                _ => start = end,
            }
        }
        if chunk == 1 && !changed {
            break;
        }
        chunk = (chunk / 2).max(1);
    }
    Some(Counterexample {
        graph: g.clone(),
        position: ops.len() - 1,
        trace: Trace { ops },
        detail,
    })
}

/// Generates a graph and a random full-deletion trace from `seed` and
/// compares `algo` with the oracle.
pub fn fuzz(seed: u64, n: usize, kind: GraphKind, algo: Algo, opts: &RunOptions) -> FuzzOutcome {
    let n = n.max(kind.min_n());
    let g = generate(kind, n, seed).expect("size is at least the minimum");
    let trace = random_trace(&g, seed, 1);
    match minimize(algo, &g, &trace, opts, 200) {
        None => FuzzOutcome::Pass,
        Some(c) => FuzzOutcome::Mismatch(c),
    }
}

/// Fuzzes many seeds, in parallel when enabled.
pub fn fuzz_seeds(
    seeds: std::ops::Range<u64>,
    n: usize,
    kind: GraphKind,
    algo: Algo,
    opts: &RunOptions,
) -> Vec<(u64, FuzzOutcome)> {
    crate::exec::map(seeds.collect(), |s| {
        let o = RunOptions {
            seed: s,
            ..opts.clone()
        };
        (s, fuzz(s, n, kind, algo, &o))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_trace_deletes_everything() {
        let g = generate(GraphKind::Grid, 30, 0).unwrap();
        let t = random_trace(&g, 4, 1);
        t.validate(&g).unwrap();
        assert_eq!(t.delete_count(), g.alive_edge_count());
        assert_eq!(t.query_count(), 2 * g.alive_edge_count());
    }

    #[test]
    fn bisection_halves() {
        let g = generate(GraphKind::Grid, 256, 0).unwrap();
        let t = bisection_trace(&g, false);
        t.validate(&g).unwrap();
        assert_eq!(t.delete_count(), g.alive_edge_count());
        let r = oracle_run(&g, &t).unwrap();
        let splits = r
            .iter()
            .filter(|x| matches!(x, OpResult::Deleted { critical: true, .. }))
            .count();
        assert_eq!(splits, 255);
    }

    #[test]
    fn good_build_passes() {
        for algo in [Algo::Base, Algo::OneLevel, Algo::Full] {
            for seed in 0..4 {
                let kind = [GraphKind::Grid, GraphKind::StackedTriangulation][seed as usize % 2];
                assert!(fuzz(seed, 150, kind, algo, &RunOptions::default()).passed());
            }
        }
    }

    #[test]
    fn broken_tie_rule_is_caught_and_minimized() {
        let opts = RunOptions {
            fault: true,
            ..RunOptions::default()
        };
        let outcome = fuzz(1, 40, GraphKind::Grid, Algo::Base, &opts);
        let FuzzOutcome::Mismatch(c) = outcome else {
            panic!("fault not detected");
        };
        assert_eq!(c.position + 1, c.trace.ops.len());
        let again = check(Algo::Base, &c.graph, &c.trace, &opts).unwrap();
        assert_eq!(again.0, c.position);
        assert!(c.trace.ops.len() < 2 * 40);
    }
}
