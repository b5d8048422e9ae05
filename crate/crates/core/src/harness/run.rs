use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use super::oracle::OpResult;
use super::trace::{Op, Trace, TraceError};
use crate::dc::{Counters, DcBuilder, DecrementalConnectivity, Layer};
use crate::dc_base::{DcBaseBuilder, DcBaseOptions};
use crate::error::DcError;
use crate::micro::MicroTable;
use crate::planar::{reduce_degree, PlanarGraph};
use crate::skeleton::{full_builder, one_level_builder, tower_builder, LevelBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Base,
    OneLevel,
    Full,
    /// Two nested levels over the base structure.
    Tower,
}

impl Algo {
    pub const PUBLIC: [Algo; 3] = [Algo::Base, Algo::OneLevel, Algo::Full];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Base => "base",
            Algo::OneLevel => "one_level",
            Algo::Full => "full",
            Algo::Tower => "tower",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "base" => Ok(Algo::Base),
            "one_level" => Ok(Algo::OneLevel),
            "full" => Ok(Algo::Full),
            "tower" => Ok(Algo::Tower),
            o => Err(format!("unknown algorithm `{o}` (base, one_level, full)")),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Breaks the tie rule of the base structure, wherever it is used.
    pub fault: bool,
    /// Shared micro table; a fresh one is made per run otherwise.
    pub table: Option<Arc<MicroTable>>,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error("operation {pos}: {source}")]
    Algorithm { pos: usize, source: DcError },
    #[error("build: {0}")]
    Build(DcError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterReport {
    pub algo: Algo,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub counters: Counters,
    pub wall_ns: u128,
}

pub const CSV_HEADER: &str =
    "algo,n,m,seed,dfs_steps,relabels,dsu_ops,skeleton_ops,micro_hits,micro_misses,wall_ns";

impl CounterReport {
    pub fn csv_row(&self) -> String {
        let c = &self.counters;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.algo,
            self.n,
            self.m,
            self.seed,
            c.dfs_steps,
            c.relabels,
            c.dsu_ops,
            c.skeleton_ops,
            c.micro_hits,
            c.micro_misses,
            self.wall_ns
        )
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub results: Vec<OpResult>,
    pub report: CounterReport,
    /// Largest number of nested instance queries behind one query.
    pub max_query_calls: u32,
    pub layers: Vec<Layer>,
    /// Time spent building, excluded from `report.wall_ns`.
    pub build_ns: u128,
}

impl RunOutput {
    pub fn answers(&self) -> Vec<bool> {
        super::oracle::answers(&self.results)
    }
}

pub fn builder(algo: Algo, n: usize, opts: &RunOptions) -> Box<dyn DcBuilder> {
    let base = DcBaseBuilder {
        opts: DcBaseOptions {
            skip_relabel_on_tie: opts.fault,
        },
    };
    let table = opts.table.clone().unwrap_or_default();
    match algo {
        Algo::Base => Box::new(base),
        Algo::OneLevel => Box::new(LevelBuilder {
            inner: Arc::new(base),
            ..one_level_builder()
        }),
        Algo::Full => Box::new(full_builder(n, table)),
        Algo::Tower => Box::new(tower_builder(base)),
    }
}

/// Runs `trace` on the degree-reduced form of `g`. Edge ids and vertex ids
/// of `g` are kept, so the trace needs no translation.
pub fn run(algo: Algo, g: &PlanarGraph, trace: &Trace, opts: &RunOptions) -> Result<RunOutput, RunError> {
    trace.validate(g)?;
    let start = Instant::now();
    let (h, _) = reduce_degree(g);
    let n = h.vertex_count();
    let mut d = builder(algo, n, opts)
        .build(h, vec![false; n])
        .map_err(RunError::Build)?;
    let build_ns = start.elapsed().as_nanos();
    let start = Instant::now();
    let (results, max_query_calls) = drive(d.as_mut(), trace)?;
    let wall_ns = start.elapsed().as_nanos();
    Ok(RunOutput {
        results,
        report: CounterReport {
            algo,
            n: g.vertex_count(),
            m: g.alive_edge_count(),
            seed: opts.seed,
            counters: d.counters(),
            wall_ns,
        },
        max_query_calls,
        layers: d.layers(),
        build_ns,
    })
}

/// Applies a trace to an instance.
pub fn drive(
    d: &mut dyn DecrementalConnectivity,
    trace: &Trace,
) -> Result<(Vec<OpResult>, u32), RunError> {
    let mut results = Vec::with_capacity(trace.ops.len());
    let mut max_calls = 0;
    for (pos, op) in trace.ops.iter().enumerate() {
        match *op {
            Op::Delete(e) => {
                let out = d
                    .delete(e)
                    .map_err(|source| RunError::Algorithm { pos, source })?;
                results.push(OpResult::Deleted {
                    critical: out.critical,
                    components: d.euler_component_count(),
                });
            }
            Op::Query(u, v) => {
                let (a, ca) = d.cc_id_traced(u);
                let (b, cb) = d.cc_id_traced(v);
                max_calls = max_calls.max(ca + cb);
                results.push(OpResult::Answer(a == b));
            }
        }
    }
    Ok((results, max_calls))
}

/// First position where `got` disagrees with the oracle. Component counts
/// are compared only where the algorithm reports one.
pub fn first_mismatch(expected: &[OpResult], got: &[OpResult]) -> Option<usize> {
    for (i, (e, g)) in expected.iter().zip(got).enumerate() {
        let same = match (e, g) {
            (OpResult::Answer(a), OpResult::Answer(b)) => a == b,
            (
                OpResult::Deleted {
                    critical: c1,
                    components: k1,
                },
                OpResult::Deleted {
                    critical: c2,
                    components: k2,
                },
            ) => c1 == c2 && (k2.is_none() || k1 == k2),
            _ => false,
        };
        if !same {
            return Some(i);
        }
    }
    (expected.len() != got.len()).then(|| expected.len().min(got.len()))
}
