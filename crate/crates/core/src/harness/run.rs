//! Running the solver on files and directories.

use std::fmt::{self, Write as _};
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::search::{solve, SearchConfig, SearchStats, SolveResult};
use crate::smtlib::{cnf_transform, parse_model, parse_script_bytes, print_model, validate_model};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Sat,
    Unknown,
    Error,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Sat => "sat",
            Answer::Unknown => "unknown",
            Answer::Error => "error",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    pub instance: String,
    pub answer: Answer,
    pub time_s: f64,
    pub steps: u64,
    pub seed: u64,
    /// The model passed exact validation. Always true for `sat`.
    pub validated: bool,
    /// Diagnostic for `error` answers.
    pub message: Option<String>,
    /// What `solve` prints: `sat` with a model block, or `unknown`.
    pub output: String,
    pub stats: Option<SearchStats>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Re-read the printed model and check it against the input.
    pub recheck: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { recheck: true }
    }
}

fn error_result(instance: String, seed: u64, started: Instant, message: String) -> RunResult {
    RunResult {
        instance,
        answer: Answer::Error,
        time_s: started.elapsed().as_secs_f64(),
        steps: 0,
        seed,
        validated: false,
        message: Some(message),
        output: String::new(),
        stats: None,
    }
}

/// Solves the script in `bytes`, labelled `instance` in the result.
pub fn run_bytes(instance: &str, bytes: &[u8], cfg: &SearchConfig, opts: RunOptions) -> RunResult {
    let started = Instant::now();
    let compiled = parse_script_bytes(bytes)
        .and_then(|s| s.elaborate())
        .and_then(|p| cnf_transform(&p).map(|f| (p, f)));
    let (problem, formula) = match compiled {
        Ok(x) => x,
        Err(e) => return error_result(instance.to_string(), cfg.seed, started, e.to_string()),
    };
    let outcome = solve(&formula, cfg);
    let steps = outcome.stats.steps;
    let mut result = RunResult {
        instance: instance.to_string(),
        answer: Answer::Unknown,
        time_s: 0.0,
        steps,
        seed: cfg.seed,
        validated: false,
        message: None,
        output: "unknown\n".to_string(),
        stats: Some(outcome.stats),
    };
    if let SolveResult::Sat(a) = outcome.result {
        let text = print_model(&formula.to_model(&a.reals, &a.bools), &problem.decls);
        let ok = !opts.recheck
            || parse_model(&text).is_ok_and(|m| validate_model(&problem.conjunction(), &m));
        if ok {
            result.answer = Answer::Sat;
            result.validated = true;
            result.output = text;
        } else {
            result.answer = Answer::Error;
            result.output = String::new();
            result.message = Some("model failed validation".to_string());
        }
    }
    result.time_s = started.elapsed().as_secs_f64();
    result
}

pub fn run_file(path: &Path, cfg: &SearchConfig, opts: RunOptions) -> RunResult {
    let name = path.display().to_string();
    match std::fs::read(path) {
        Ok(bytes) => run_bytes(&name, &bytes, cfg, opts),
        Err(e) => error_result(name, cfg.seed, Instant::now(), format!("cannot read file: {e}")),
    }
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    /// Sorted by instance path.
    pub rows: Vec<RunResult>,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Nearest-rank quantile of sorted values.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let rank = ((p * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

pub const CSV_HEADER: &str = "instance,answer,time_s,steps,seed,validated";

impl BenchReport {
    pub fn solved(&self) -> usize {
        self.rows.iter().filter(|r| r.answer == Answer::Sat).count()
    }

    /// Median, 90th percentile and maximum run time in seconds.
    pub fn time_quantiles(&self) -> (f64, f64, f64) {
        let mut times: Vec<f64> = self.rows.iter().map(|r| r.time_s).collect();
        times.sort_by(f64::total_cmp);
        (quantile(&times, 0.5), quantile(&times, 0.9), quantile(&times, 1.0))
    }

    pub fn summary_line(&self) -> String {
        let (p50, p90, max) = self.time_quantiles();
        format!(
            "# solved={}/{} time_p50={p50:.3} time_p90={p90:.3} time_max={max:.3}",
            self.solved(),
            self.rows.len()
        )
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{CSV_HEADER}\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.3},{},{},{}",
                csv_field(&r.instance),
                r.answer,
                r.time_s,
                r.steps,
                r.seed,
                r.validated
            );
        }
        out.push_str(&self.summary_line());
        out.push('\n');
        out
    }

    /// Tie histogram summed over all runs.
    pub fn tie_histogram(&self) -> SearchStats {
        let mut total = SearchStats::default();
        for stats in self.rows.iter().filter_map(|r| r.stats.as_ref()) {
            for (k, n) in &stats.tie_histogram {
                *total.tie_histogram.entry(*k).or_default() += n;
            }
        }
        total
    }
}

/// `.smt2` files directly inside `dir`, sorted.
pub fn list_instances(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "smt2") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Runs every instance of `dir` once, `jobs` at a time.
pub fn bench_dir(dir: &Path, cfg: &SearchConfig, jobs: usize, opts: RunOptions) -> io::Result<BenchReport> {
    let files = list_instances(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(io::Error::other)?;
    let rows = pool.install(|| files.par_iter().map(|f| run_file(f, cfg, opts)).collect());
    Ok(BenchReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smtlib::parse_model;
    use crate::Rational;

    fn cfg() -> SearchConfig {
        SearchConfig { cutoff: Some(std::time::Duration::from_secs(10)), ..SearchConfig::default() }
    }

    #[test]
    fn minimal_instance_is_sat() {
        let r = run_bytes("m", b"(declare-fun x () Real)(assert (> x 4))(check-sat)", &cfg(), RunOptions::default());
        assert_eq!((r.answer, r.validated), (Answer::Sat, true));
        let m = parse_model(&r.output).unwrap();
        assert!(m.reals["x"] > Rational::from_integer(4));
    }

    #[test]
    fn squares_are_errors() {
        let r = run_bytes("sq", b"(declare-fun x () Real)(assert (> (* x x) 4))", &cfg(), RunOptions::default());
        assert_eq!(r.answer, Answer::Error);
        assert!(r.message.unwrap().contains("non-multilinear"));
    }

    #[test]
    fn tiny_cutoff_gives_unknown() {
        let c = SearchConfig { cutoff: Some(std::time::Duration::from_micros(1)), ..SearchConfig::default() };
        let r = run_bytes("u", b"(declare-fun x () Real)(assert (> x 4))(assert (< x 3))", &c, RunOptions::default());
        assert_eq!((r.answer, r.output.as_str()), (Answer::Unknown, "unknown\n"));
    }

    #[test]
    fn csv_layout_and_quantiles() {
        let row = |name: &str, answer, t| RunResult {
            instance: name.into(),
            answer,
            time_s: t,
            steps: 3,
            seed: 1,
            validated: answer == Answer::Sat,
            message: None,
            output: String::new(),
            stats: None,
        };
        let report = BenchReport {
            rows: vec![row("a,b.smt2", Answer::Sat, 0.5), row("c.smt2", Answer::Unknown, 2.0)],
        };
        assert_eq!(
            report.to_csv(),
            "instance,answer,time_s,steps,seed,validated\n\"a,b.smt2\",sat,0.500,3,1,true\n\
             c.smt2,unknown,2.000,3,1,false\n# solved=1/2 time_p50=0.500 time_p90=2.000 time_max=2.000\n"
        );
        assert_eq!(BenchReport::default().summary_line(), "# solved=0/0 time_p50=0.000 time_p90=0.000 time_max=0.000");
    }
}
