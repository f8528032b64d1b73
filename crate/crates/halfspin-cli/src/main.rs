//! `halfspin` — verification campaigns for the half-spin identity family.
//!
//! Four subcommands share one report-row schema (see [`report`]):
//!
//! * `verify` runs identity checks — per-point simplex checks, seeded
//!   randomized suites, exhaustive sweeps — across a `(g, n)` range or at one
//!   explicit point, and fails the process when any row fails.
//! * `eval` computes a single quantity at one point.
//! * `scan` tabulates a quantity over every point of a range.
//! * `bench` times the per-point check battery, point by point.
//!
//! Exit codes: 0 when every row passed, 1 when at least one row failed, 2 on
//! a usage or configuration error. Output is deterministic for a fixed
//! configuration, including the worker count.

mod campaign;
mod report;

use std::env;
use std::io::{BufWriter, Write};
use std::process::ExitCode;
use std::thread;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use halfspin::exact::{parse_rational, Rational};
use halfspin::identities::Optimizer;
use halfspin::sampling::DEFAULT_SEED;

use crate::campaign::{AnyCheck, Campaign, EvalSpec, EvalTarget, Selection};
use crate::report::{emit, Format, Row};

/// Environment variable supplying the default worker count.
const WORKERS_ENV: &str = "HALFSPIN_WORKERS";

/// Desk-scale guard rails: ranges outside these are a configuration error.
const GENUS_BOUNDS: (u64, u64) = (2, 12);
const ENTRY_COUNT_BOUNDS: (u64, u64) = (1, 8);

#[derive(Parser)]
#[command(
    name = "halfspin",
    version,
    about = "Verification campaigns for the half-spin identity family",
    after_help = "Exit codes: 0 every row passed, 1 some row failed, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks and emit one row per comparison.
    Verify(VerifyArgs),
    /// Evaluate one quantity at one explicit point.
    Eval(EvalArgs),
    /// Tabulate one quantity over every point of a range.
    Scan(ScanArgs),
    /// Time the full per-point check battery across a range.
    Bench(BenchArgs),
}

/// An inclusive integer range, written `LO..HI` or as a single value.
#[derive(Clone, Copy, Debug)]
struct InclusiveRange {
    lo: u64,
    hi: u64,
}

impl std::str::FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let end = |part: &str| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{part}` is not a non-negative integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (end(lo)?, end(hi)?),
            None => {
                let value = end(s)?;
                (value, value)
            }
        };
        if lo > hi {
            return Err(format!("`{s}` is empty; write LO..HI with LO <= HI"));
        }
        Ok(InclusiveRange { lo, hi })
    }
}

#[derive(Args)]
struct RangeArgs {
    /// Inclusive genus range `LO..HI` (or one value), within 2..12.
    #[arg(long, default_value = "2..3")]
    g: InclusiveRange,

    /// Inclusive entry-count range `LO..HI` (or one value), within 1..8.
    #[arg(long, default_value = "1..4")]
    n: InclusiveRange,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,

    /// Evaluation strategy; both strategies produce identical values.
    #[arg(long, value_enum, default_value_t = OptimizerArg::Census)]
    optimizer: OptimizerArg,
}

/// CLI surface for the library's evaluation strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum OptimizerArg {
    /// Convolve over block-profile classes.
    Census,
    /// Enumerate set partitions one by one.
    Direct,
}

impl From<OptimizerArg> for Optimizer {
    fn from(arg: OptimizerArg) -> Optimizer {
        match arg {
            OptimizerArg::Census => Optimizer::Census,
            OptimizerArg::Direct => Optimizer::Direct,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Check to run; repeatable. Default: every check.
    #[arg(long = "check", value_name = "NAME")]
    checks: Vec<String>,

    #[command(flatten)]
    range: RangeArgs,

    /// Explicit entry vector `a_1,...,a_n`: verify one point instead of a
    /// range (needs a single-valued --g; per-point checks only).
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "n")]
    a: Option<Vec<u64>>,

    /// Seed for the randomized suites.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads. Default: $HALFSPIN_WORKERS, else all cores.
    #[arg(long)]
    workers: Option<usize>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Quantity to evaluate.
    #[arg(value_enum, ignore_case = true)]
    target: EvalTarget,

    /// Genus, within 2..12.
    #[arg(long)]
    g: u64,

    /// Entry vector `a_1,...,a_n` (for `integral`: the exponent vector).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    a: Vec<u64>,

    /// Splitting index, for `p-nt` and `conjecture-rhs`.
    #[arg(long)]
    t: Option<usize>,

    /// Abscissa for `s` and `tilde-s`: an exact rational such as `-3/2`.
    #[arg(long, value_parser = parse_abscissa, allow_hyphen_values = true)]
    x: Option<Rational>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ScanArgs {
    /// Quantity to tabulate.
    #[arg(value_enum, ignore_case = true)]
    target: EvalTarget,

    #[command(flatten)]
    range: RangeArgs,

    /// Splitting index, for `p-nt` and `conjecture-rhs`.
    #[arg(long)]
    t: Option<usize>,

    /// Abscissa for `s` and `tilde-s`: an exact rational such as `-3/2`.
    #[arg(long, value_parser = parse_abscissa, allow_hyphen_values = true)]
    x: Option<Rational>,

    /// Worker threads. Default: $HALFSPIN_WORKERS, else all cores.
    #[arg(long)]
    workers: Option<usize>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    range: RangeArgs,

    #[command(flatten)]
    output: OutputArgs,
}

fn parse_abscissa(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|error| error.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(args) => {
            let mut checks = Vec::new();
            for name in &args.checks {
                match AnyCheck::parse(name) {
                    Some(check) => checks.push(check),
                    None => bail!(
                        "unknown check `{name}`; known checks: {}",
                        AnyCheck::known_names().join(", ")
                    ),
                }
            }
            let explicit = !checks.is_empty();
            let selection = if explicit {
                Selection::from_checks(&checks)
            } else {
                Selection::all()
            };
            let optimizer = args.output.optimizer.into();
            let rows = if let Some(a) = args.a {
                let g = single_genus(args.range.g)?;
                guard(a.len() as u64, "entries in --a", ENTRY_COUNT_BOUNDS)?;
                campaign::verify_point(g, a, &selection, explicit, optimizer)?
            } else {
                let campaign = campaign_for(&args.range, args.seed, optimizer)?;
                with_pool(args.workers, || {
                    campaign::verify_range(&campaign, &selection)
                })?
            };
            finish(&rows, args.output.format)
        }
        Command::Eval(args) => {
            guard(args.g, "--g", GENUS_BOUNDS)?;
            guard(args.a.len() as u64, "entries in --a", ENTRY_COUNT_BOUNDS)?;
            let spec = EvalSpec {
                target: args.target,
                t: args.t,
                x: args.x,
            };
            let row =
                campaign::eval_point(args.g as u32, args.a, &spec, args.output.optimizer.into())?;
            finish(&[row], args.output.format)
        }
        Command::Scan(args) => {
            let campaign = campaign_for(&args.range, DEFAULT_SEED, args.output.optimizer.into())?;
            let spec = EvalSpec {
                target: args.target,
                t: args.t,
                x: args.x,
            };
            let rows = with_pool(args.workers, || campaign::scan_range(&campaign, &spec))?;
            finish(&rows, args.output.format)
        }
        Command::Bench(args) => {
            let campaign = campaign_for(&args.range, DEFAULT_SEED, args.output.optimizer.into())?;
            let (rows, total) = campaign::bench_range(&campaign)?;
            finish(&rows, args.output.format)?;
            eprintln!("bench: {} points in {total} ms total", rows.len());
            Ok(true)
        }
    }
}

/// Validates the ranges and assembles the campaign configuration.
fn campaign_for(range: &RangeArgs, seed: u64, optimizer: Optimizer) -> Result<Campaign> {
    guard(range.g.lo, "--g", GENUS_BOUNDS)?;
    guard(range.g.hi, "--g", GENUS_BOUNDS)?;
    guard(range.n.lo, "--n", ENTRY_COUNT_BOUNDS)?;
    guard(range.n.hi, "--n", ENTRY_COUNT_BOUNDS)?;
    Ok(Campaign {
        g_lo: range.g.lo as u32,
        g_hi: range.g.hi as u32,
        n_lo: range.n.lo as usize,
        n_hi: range.n.hi as usize,
        seed,
        optimizer,
    })
}

fn guard(value: u64, what: &str, (lo, hi): (u64, u64)) -> Result<()> {
    if value < lo || value > hi {
        bail!("{what} must stay within {lo}..{hi} (inclusive), got {value}");
    }
    Ok(())
}

fn single_genus(range: InclusiveRange) -> Result<u32> {
    if range.lo != range.hi {
        bail!("--a verifies one point; give a single --g, not a range");
    }
    guard(range.lo, "--g", GENUS_BOUNDS)?;
    Ok(range.lo as u32)
}

/// Resolves the worker count (flag, then environment, then all cores) and
/// runs the job on a pool of that size.
fn with_pool<T: Send>(flag: Option<usize>, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let workers = match flag {
        Some(workers) => workers,
        None => match env::var(WORKERS_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&workers| workers >= 1)
                .with_context(|| {
                    format!("{WORKERS_ENV} must be a positive integer, got `{raw}`")
                })?,
            Err(_) => thread::available_parallelism().map_or(1, usize::from),
        },
    };
    if workers == 0 {
        bail!("--workers must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building the worker pool")?;
    pool.install(job)
}

/// Emits the rows to stdout and reports whether every row passed.
fn finish(rows: &[Row], format: Format) -> Result<bool> {
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    emit(&mut out, format, rows)?;
    out.flush()?;
    Ok(!rows.iter().any(Row::is_fail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn ranges_parse_inclusively() {
        let range: InclusiveRange = "2..4".parse().unwrap();
        assert_eq!((range.lo, range.hi), (2, 4));
        let single: InclusiveRange = "3".parse().unwrap();
        assert_eq!((single.lo, single.hi), (3, 3));
        assert!("4..2".parse::<InclusiveRange>().is_err());
        assert!("x..2".parse::<InclusiveRange>().is_err());
    }

    #[test]
    fn guards_reject_out_of_range_values() {
        assert!(guard(1, "--g", GENUS_BOUNDS).is_err());
        assert!(guard(13, "--g", GENUS_BOUNDS).is_err());
        assert!(guard(12, "--g", GENUS_BOUNDS).is_ok());
        assert!(guard(0, "--n", ENTRY_COUNT_BOUNDS).is_err());
        assert!(guard(9, "--n", ENTRY_COUNT_BOUNDS).is_err());
    }
}
