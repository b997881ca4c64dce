use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lsra_core::harness::{bench_dir, generate_planted, run_file, Answer, Kind, PlantedParams, RunOptions};
use lsra_core::search::{Ablation, InitPolicy, SearchConfig, SearchStats};

#[derive(Parser)]
#[command(name = "lsra", version, about = "Local search for SMT over linear and multilinear real arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one SMT-LIB2 file. Exit code: 0 sat, 1 unknown, 2 error.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run every .smt2 file in a directory and print a CSV report.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Instances solved concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a random satisfiable instance.
    Gen {
        kind: KindArg,
        n_vars: usize,
        n_clauses: usize,
        seed: u64,
        /// Boolean variables mixed into the clauses.
        #[arg(long, default_value_t = 0)]
        bools: usize,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Lra,
    Mra,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Zero,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum AblationArg {
    None,
    Cm,
    Score,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time limit per instance in seconds.
    #[arg(long, default_value_t = 1200.0)]
    cutoff: f64,
    #[arg(long)]
    max_steps: Option<u64>,
    /// Mode-switch factor.
    #[arg(long = "L", default_value_t = 20)]
    switch_factor: u32,
    /// Operations sampled when escaping a local optimum.
    #[arg(long = "K", default_value_t = 3)]
    escape_samples: usize,
    /// Smoothing probability of the clause-weight update.
    #[arg(long = "sp", default_value_t = 0.0003)]
    smooth_prob: f64,
    #[arg(long, value_enum, default_value_t = InitArg::Zero)]
    init: InitArg,
    #[arg(long, value_enum, default_value_t = AblationArg::None)]
    ablation: AblationArg,
    /// Re-read and check every model before reporting sat.
    #[arg(long, value_enum, default_value_t = Switch::On)]
    validate: Switch,
    /// Print search statistics and the tie histogram to stderr.
    #[arg(long)]
    stats: bool,
    /// Write the tie histogram CSV (k,step_count) to this file.
    #[arg(long)]
    stats_out: Option<PathBuf>,
    /// Re-initialize the assignment every this many steps.
    #[arg(long)]
    restart_every: Option<u64>,
}

impl SolverArgs {
    fn config(&self) -> Result<SearchConfig> {
        if !(self.cutoff.is_finite() && self.cutoff >= 0.0) {
            bail!("cutoff must be a non-negative number of seconds");
        }
        let ablation = match self.ablation {
            AblationArg::None => Ablation::None,
            AblationArg::Cm => Ablation::Cm,
            AblationArg::Score => Ablation::Score,
            AblationArg::Plain => Ablation::Plain,
        };
        let cfg = SearchConfig {
            switch_factor: self.switch_factor,
            escape_samples: self.escape_samples,
            smooth_prob: self.smooth_prob,
            cutoff: Some(Duration::from_secs_f64(self.cutoff)),
            max_steps: self.max_steps,
            seed: self.seed,
            init: match self.init {
                InitArg::Zero => InitPolicy::Zero,
                InitArg::Random => InitPolicy::Random,
            },
            restart_interval: self.restart_every,
            ..SearchConfig::default()
        }
        .with_ablation(ablation);
        cfg.validate()?;
        Ok(cfg)
    }

    fn options(&self) -> RunOptions {
        RunOptions { recheck: self.validate == Switch::On }
    }

    fn report_stats(&self, stats: &SearchStats) -> Result<()> {
        if self.stats {
            eprintln!("{}", stats.summary());
            eprint!("{}", stats.tie_histogram_csv());
        }
        if let Some(path) = &self.stats_out {
            std::fs::write(path, stats.tie_histogram_csv())
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
        Ok(())
    }
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { file, solver } => {
            let cfg = solver.config()?;
            let result = run_file(&file, &cfg, solver.options());
            if let Some(stats) = &result.stats {
                solver.report_stats(stats)?;
            }
            print!("{}", result.output);
            Ok(match result.answer {
                Answer::Sat => ExitCode::from(0),
                Answer::Unknown => ExitCode::from(1),
                Answer::Error => {
                    eprintln!("error: {}", result.message.unwrap_or_default());
                    ExitCode::from(2)
                }
            })
        }
        Command::Bench { dir, solver, jobs, out } => {
            let cfg = solver.config()?;
            let report = bench_dir(&dir, &cfg, jobs, solver.options())
                .with_context(|| format!("cannot read directory {}", dir.display()))?;
            for row in report.rows.iter().filter(|r| r.answer == Answer::Error) {
                eprintln!("{}: {}", row.instance, row.message.as_deref().unwrap_or("error"));
            }
            solver.report_stats(&report.tie_histogram())?;
            write_or_print(&out, &report.to_csv())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { kind, n_vars, n_clauses, seed, bools, out } => {
            if n_vars == 0 || n_clauses == 0 {
                bail!("n_vars and n_clauses must be at least 1");
            }
            let kind = match kind {
                KindArg::Lra => Kind::Lra,
                KindArg::Mra => Kind::Mra,
            };
            let planted = generate_planted(&PlantedParams::new(kind, n_vars, n_clauses, seed).with_bools(bools));
            write_or_print(&out, &planted.text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
