//! Instance generation and benchmark running.

mod generate;
mod run;

pub use generate::{generate_planted, random_formula, Kind, Planted, PlantedParams};
pub use run::{bench_dir, list_instances, run_bytes, run_file, Answer, BenchReport, RunOptions, RunResult, CSV_HEADER};
