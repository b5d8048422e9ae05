//! Oracles, trace I/O, fuzzing and benchmark plumbing.

pub mod bench;
pub mod fuzz;
pub mod oracle;
pub mod run;
pub mod trace;

pub use bench::{bench, bench_one, parse_sizes, to_csv};
pub use fuzz::{bisection_trace, check, fuzz, fuzz_seeds, minimize, random_trace, Counterexample, FuzzOutcome};
pub use oracle::{answers, offline_oracle, oracle_run, OpResult};
pub use run::{drive, first_mismatch, run, Algo, CounterReport, RunError, RunOptions, RunOutput, CSV_HEADER};
pub use trace::{format_answers, parse_bundle, write_bundle, Op, Trace, TraceError};
