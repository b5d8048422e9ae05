//! Command-line front end: graph generation, trace replay, fuzzing and
//! benchmarks. Exit codes: 0 verified, 1 mismatch, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use planar_dc::harness::{
    self, format_answers, oracle_run, parse_sizes, random_trace, run, write_bundle, Algo, FuzzOutcome,
    RunOptions, Trace,
};
use planar_dc::planar::{generate, parse_graph, write_graph, GraphKind};

#[derive(Parser)]
#[command(name = "planar-dc", version, about = "Decremental connectivity on embedded planar graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Base,
    #[value(name = "one_level")]
    OneLevel,
    Full,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Base => Algo::Base,
            AlgoArg::OneLevel => Algo::OneLevel,
            AlgoArg::Full => Algo::Full,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Grid,
    Stacked,
    Cycle,
    Path,
}

impl From<KindArg> for GraphKind {
    fn from(k: KindArg) -> GraphKind {
        match k {
            KindArg::Grid => GraphKind::Grid,
            KindArg::Stacked => GraphKind::StackedTriangulation,
            KindArg::Cycle => GraphKind::Cycle,
            KindArg::Path => GraphKind::Path,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an embedded graph, optionally with a random deletion trace.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graph output path, `-` for stdout.
        #[arg(long, default_value = "-")]
        out: String,
        /// Also write a full random deletion trace here.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Replay a trace and print one answer line per query.
    Run {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Append a counter row to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Compare every answer and criticality verdict with the oracle.
        #[arg(long)]
        verify_oracle: bool,
    },
    /// Compare an algorithm with the oracle over a range of seeds.
    Fuzz {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        n: usize,
        /// Seed range `a..b` (half-open).
        #[arg(long, value_parser = parse_seed_range)]
        seeds: std::ops::Range<u64>,
        /// Graph family; by default grids and stacked triangulations alternate.
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        /// Directory for minimized counterexamples.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        fault: bool,
    },
    /// Full bisection deletion sequences over a range of sizes.
    Bench {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        /// `2^a..2^b`, a comma-separated list, or one size.
        #[arg(long)]
        sizes: String,
        #[arg(long, value_enum, default_value = "stacked")]
        kind: KindArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path, `-` for stdout.
        #[arg(long, default_value = "-")]
        csv: String,
    },
}

fn parse_seed_range(s: &str) -> Result<std::ops::Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected `a..b`")?;
    let a: u64 = a.parse().map_err(|_| format!("bad seed `{a}`"))?;
    let b: u64 = b.parse().map_err(|_| format!("bad seed `{b}`"))?;
    if a >= b {
        return Err("empty seed range".into());
    }
    Ok(a..b)
}

enum Failure {
    Mismatch(String),
    Usage(String),
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn write_out(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| usage(format!("{path}: {e}")))
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn append_csv(path: &Path, row: &str) -> Result<(), Failure> {
    use std::io::Write;
    let fresh = !path.exists();
    let mut f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if fresh {
        writeln!(f, "{}", harness::CSV_HEADER).map_err(usage)?;
    }
    writeln!(f, "{row}").map_err(usage)
}

fn main_inner(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Gen {
            kind,
            n,
            seed,
            out,
            trace_out,
        } => {
            let g = generate(kind.into(), n, seed).map_err(usage)?;
            write_out(&out, &write_graph(&g))?;
            if let Some(p) = trace_out {
                fs::write(&p, random_trace(&g, seed, 1).to_text())
                    .map_err(|e| usage(format!("{}: {e}", p.display())))?;
            }
            Ok(())
        }
        Cmd::Run {
            algo,
            graph,
            trace,
            csv,
            verify_oracle,
        } => {
            let g = parse_graph(&read(&graph)?).map_err(usage)?;
            let t = Trace::parse(&read(&trace)?).map_err(usage)?;
            let out = run(algo.into(), &g, &t, &RunOptions::default()).map_err(usage)?;
            print!("{}", format_answers(&out.answers()));
            if let Some(p) = csv {
                append_csv(&p, &out.report.csv_row())?;
            }
            if verify_oracle {
                let expected = oracle_run(&g, &t).map_err(usage)?;
                if let Some(i) = harness::first_mismatch(&expected, &out.results) {
                    return Err(Failure::Mismatch(format!(
                        "operation {i} ({:?}) disagrees with the oracle",
                        t.ops[i]
                    )));
                }
                eprintln!("verified {} operations against the oracle", t.ops.len());
            }
            Ok(())
        }
        Cmd::Fuzz {
            algo,
            n,
            seeds,
            kind,
            out,
            fault,
        } => {
            let opts = RunOptions {
                fault,
                ..RunOptions::default()
            };
            let algo: Algo = algo.into();
            let list: Vec<u64> = seeds.clone().collect();
            let results = planar_dc::exec::map(list, |s| {
                let k = kind.map(GraphKind::from).unwrap_or(if s % 2 == 0 {
                    GraphKind::Grid
                } else {
                    GraphKind::StackedTriangulation
                });
                let o = RunOptions { seed: s, ..opts.clone() };
                (s, k, harness::fuzz(s, n, k, algo, &o))
            });
            let mut failed = 0;
            for (s, k, r) in results {
                if let FuzzOutcome::Mismatch(c) = r {
                    failed += 1;
                    eprintln!("seed {s} ({k}, n = {n}): {}", c.detail);
                    let bundle = write_bundle(&c.graph, &c.trace);
                    match &out {
                        Some(dir) => {
                            fs::create_dir_all(dir).map_err(usage)?;
                            let p = dir.join(format!("counterexample-{algo}-{s}.txt"));
                            fs::write(&p, bundle).map_err(usage)?;
                            eprintln!("  minimized trace ({} ops) in {}", c.trace.ops.len(), p.display());
                        }
                        None => eprint!("{bundle}"),
                    }
                }
            }
            let total = seeds.end - seeds.start;
            if failed > 0 {
                return Err(Failure::Mismatch(format!("{failed} of {total} seeds failed")));
            }
            eprintln!("{total} seeds passed");
            Ok(())
        }
        Cmd::Bench {
            algo,
            sizes,
            kind,
            seed,
            csv,
        } => {
            let opts = RunOptions {
                seed,
                ..RunOptions::default()
            };
            let sizes = parse_sizes(&sizes).map_err(usage)?;
            let reports = harness::bench(algo.into(), kind.into(), &sizes, &opts).map_err(usage)?;
            write_out(&csv, &harness::to_csv(&reports))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
