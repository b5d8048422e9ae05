use super::fuzz::bisection_trace;
use super::run::{run, Algo, CounterReport, RunError, RunOptions, RunOutput, CSV_HEADER};
use crate::planar::{generate, GraphKind};

/// Runs a full bisection deletion sequence on a generated graph.
pub fn bench_one(algo: Algo, kind: GraphKind, n: usize, opts: &RunOptions) -> Result<RunOutput, RunError> {
    let g = generate(kind, n.max(kind.min_n()), opts.seed).map_err(|e| RunError::Build(e.into()))?;
    let trace = bisection_trace(&g, false);
    run(algo, &g, &trace, opts)
}

/// Sizes run one after another so that wall times do not interfere.
pub fn bench(algo: Algo, kind: GraphKind, sizes: &[usize], opts: &RunOptions) -> Result<Vec<CounterReport>, RunError> {
    sizes
        .iter()
        .map(|&n| bench_one(algo, kind, n, opts).map(|o| o.report))
        .collect()
}

pub fn to_csv(reports: &[CounterReport]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

fn parse_size(s: &str) -> Result<usize, String> {
    let s = s.trim();
    if let Some(exp) = s.strip_prefix("2^") {
        let k: u32 = exp.parse().map_err(|_| format!("bad size `{s}`"))?;
        if k >= 40 {
            return Err(format!("size `{s}` too large"));
        }
        return Ok(1usize << k);
    }
    s.parse().map_err(|_| format!("bad size `{s}`"))
}

/// Accepts `2^a..2^b` (every power of two in between), a comma-separated
/// list, or a single size.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse_size(a)?, parse_size(b)?);
        if !a.is_power_of_two() || !b.is_power_of_two() || a > b {
            return Err(format!("range `{s}` must run between powers of two"));
        }
        let mut out = Vec::new();
        let mut x = a;
        while x <= b {
            out.push(x);
            x *= 2;
        }
        return Ok(out);
    }
    s.split(',').map(parse_size).collect()
}
