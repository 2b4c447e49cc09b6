//! The `tsched` command line.
//!
//! Exit codes: 0 on success, 1 for domain errors (bad files, refused
//! instances, failed assertions), 2 for usage errors. Every error is written
//! to the diagnostic stream as one line of JSON.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Parser, Subcommand};
use serde_json::json;

use crate::bench::{parse_suite, run_bench};
use crate::error::{Error, Result};
use crate::exact::{solve_exact, solve_exact_unpruned, DEFAULT_EXACT_LIMIT};
use crate::generate::{gen_partition, gen_random};
use crate::heuristics::lpt_schedule;
use crate::io::{
    emit_instance, emit_partition, emit_reduction, parse_instance, parse_partition,
    parse_permutation, TraceFile,
};
use crate::ptas::{parse_epsilon, ptas_solve};
use crate::reduction::{build_reduction, decide_partition};
use crate::schedule::{check_feasible, evaluate_greedy, lower_bound};

#[derive(Debug, Parser)]
#[command(name = "tsched", version, about = "Single-processor scheduling with time restrictions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Greedy trace of a permutation (1-based, comma-separated) and its feasibility.
    Eval { instance: PathBuf, perm: String },
    /// Exact optimum by permutation search.
    Opt {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        limit: usize,
        /// Disable all pruning.
        #[arg(long)]
        unpruned: bool,
    },
    /// Longest-processing-time-first schedule.
    Lpt { instance: PathBuf },
    /// Rounding + dynamic-programming approximation (unit window only).
    Ptas {
        instance: PathBuf,
        /// Accuracy as an exact rational, e.g. 1/4.
        #[arg(long)]
        epsilon: String,
    },
    /// Build the scheduling instance of a partition instance.
    Reduce { partition: PathBuf },
    /// Decide a partition instance through its scheduling image.
    Decide {
        partition: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        limit: usize,
    },
    /// Random unit-window instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "zero-fraction", default_value_t = 0.0)]
        zero_fraction: f64,
    },
    /// Random partition instance with an even total.
    Genpart {
        #[arg(long)]
        m: usize,
        #[arg(long = "max-value")]
        max_value: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Benchmark table (CSV on stdout, optional TSV file).
    Bench {
        #[arg(long)]
        suite: PathBuf,
        /// Also write a tab-separated, plot-ready table here.
        #[arg(long)]
        tsv: Option<PathBuf>,
        /// Replace wall-time columns with `-` for reproducible output.
        #[arg(long = "no-timing")]
        no_timing: bool,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    let text = match cmd {
        Command::Eval { instance, perm } => {
            let inst = parse_instance(&read(&instance)?)?;
            let perm = parse_permutation(&perm, inst.n())?;
            let trace = evaluate_greedy(&inst, &perm)?;
            let feasible = check_feasible(&inst, &trace)?;
            pretty(&json!({ "feasible": feasible, "trace": TraceFile::from_trace(&trace) }))
        }
        Command::Opt {
            instance,
            limit,
            unpruned,
        } => {
            let inst = parse_instance(&read(&instance)?)?;
            let r = if unpruned {
                solve_exact_unpruned(&inst, limit)?
            } else {
                solve_exact(&inst, limit)?
            };
            pretty(&json!({
                "optimum": r.optimum.to_string(),
                "lower_bound": lower_bound(&inst).to_string(),
                "explored": r.explored,
                "trace": TraceFile::from_trace(&r.witness),
            }))
        }
        Command::Lpt { instance } => {
            let inst = parse_instance(&read(&instance)?)?;
            let trace = lpt_schedule(&inst);
            pretty(&json!({
                "makespan": trace.makespan().to_string(),
                "trace": TraceFile::from_trace(&trace),
            }))
        }
        Command::Ptas { instance, epsilon } => {
            let inst = parse_instance(&read(&instance)?)?;
            let cfg = parse_epsilon(&epsilon)?;
            let r = ptas_solve(&inst, &cfg)?;
            pretty(&json!({
                "epsilon": crate::time::format_rational(cfg.epsilon()),
                "tau": cfg.tau(),
                "f_star": r.f_star.to_string(),
                "makespan": r.trace.makespan().to_string(),
                "trace": TraceFile::from_trace(&r.trace),
            }))
        }
        Command::Reduce { partition } => {
            let part = parse_partition(&read(&partition)?)?;
            emit_reduction(&build_reduction(&part)?)
        }
        Command::Decide { partition, limit } => {
            let part = parse_partition(&read(&partition)?)?;
            if decide_partition(&part, limit)? { "YES" } else { "NO" }.to_string()
        }
        Command::Gen {
            n,
            b,
            seed,
            zero_fraction,
        } => emit_instance(&gen_random(n, b, seed, zero_fraction)?),
        Command::Genpart { m, max_value, seed } => emit_partition(&gen_partition(m, max_value, seed)?),
        Command::Bench {
            suite,
            tsv,
            no_timing,
        } => {
            let suite = parse_suite(&read(&suite)?)?;
            let report = run_bench(&suite, !no_timing)?;
            if let Some(path) = tsv {
                std::fs::write(&path, report.to_tsv())
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            }
            let csv = report.to_csv();
            out.write_all(csv.as_bytes()).map_err(|e| Error::Io(e.to_string()))?;
            return Ok(());
        }
    };
    writeln!(out, "{text}").map_err(|e| Error::Io(e.to_string()))
}

fn diagnostic(err: &mut dyn Write, kind: &str, message: &str) {
    let line = json!({ "error": kind, "message": message });
    let _ = writeln!(err, "{line}");
}

/// Run the CLI on `argv` (program name first) and return the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let msg = e.render().to_string();
                    let first = msg.lines().next().unwrap_or("usage error").trim_start_matches("error: ");
                    diagnostic(err, "usage", first);
                    2
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            diagnostic(err, e.kind(), &e.to_string());
            1
        }
    }
}
