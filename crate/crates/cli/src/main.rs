//! `ising` — exact Ising partition polynomials of cubic maps.
//!
//! Four subcommands drive the engine end to end:
//!
//! * `compute` — solve through a requested edge count, resuming from and
//!   atomically updating a persistent coefficient cache;
//! * `verify`  — run the cross-check suites against a cache and emit a
//!   machine-readable JSON report;
//! * `export`  — serialize a cache to JSON or CSV;
//! * `bench`   — time the solver at reference sizes and report wall clock
//!   and peak memory.
//!
//! The `ISING_THREADS` environment variable bounds the worker-thread
//! budget (results are byte-identical regardless).  Commands touching a
//! cache take an advisory lock (`<cache>.lock`) so two processes never
//! race on the same file.

mod bench;
mod lock;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use ising_core::table::CoeffTable;
use ising_core::{Mode, SolveState};

use crate::lock::CacheLock;

const DEFAULT_CACHE: &str = "ising-cache.tbl";
const THREADS_VAR: &str = "ISING_THREADS";

#[derive(Parser)]
#[command(name = "ising", version, about = "Exact Ising partition polynomials of cubic maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Verify every solved grade against the defining equation.
    Checked,
    /// Skip the per-grade proof obligations (output is identical).
    Fast,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Mode {
        match arg {
            ModeArg::Checked => Mode::Checked,
            ModeArg::Fast => Mode::Fast,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compute all partition polynomials with at most the given number of
    /// edges, resuming from the cache when one is present.
    Compute {
        /// Edge bound (at least 3; sizes are whole multiples of 3).
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        max_edges: u64,
        /// Whether to re-verify each grade against the equation while
        /// solving.
        #[arg(long, value_enum, default_value_t = ModeArg::Checked)]
        mode: ModeArg,
        /// Cache file to resume from and write to.
        #[arg(long, default_value = DEFAULT_CACHE)]
        cache: PathBuf,
    },
    /// Run cross-check suites against a computed cache and print a JSON
    /// report.
    Verify {
        /// Which suite to run.
        #[arg(long, value_enum, default_value_t = verify::SuiteArg::All)]
        suite: verify::SuiteArg,
        /// Depth (in edges) at which to verify; the cache must reach it.
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        max_edges: u64,
        /// Cache file to verify.
        #[arg(long, default_value = DEFAULT_CACHE)]
        cache: PathBuf,
        /// Also write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Negative control: corrupt one cached coefficient in memory
        /// before verifying; the residual suite must then fail and name
        /// the offending size and genus.
        #[arg(long)]
        inject_perturbation: bool,
    },
    /// Export a cache as JSON or CSV (a missing cache exports as an empty,
    /// header-only file).
    Export {
        #[arg(long, value_enum)]
        format: FormatArg,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
        /// Cache file to export.
        #[arg(long, default_value = DEFAULT_CACHE)]
        cache: PathBuf,
    },
    /// Time fast-mode computation at reference sizes; report wall clock,
    /// peak memory, and the fast/checked equivalence check.
    Bench {
        /// Edge counts to benchmark, in increasing order.
        #[arg(long, value_delimiter = ',', default_values_t = [36u64, 72, 120])]
        sizes: Vec<u64>,
        /// Also write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Internal: run one size in-process and print a single JSON line.
        #[arg(long, hide = true, value_parser = clap::value_parser!(u64).range(3..))]
        single: Option<u64>,
        /// Internal: mode for `--single` runs.
        #[arg(long, hide = true, value_enum, default_value_t = ModeArg::Fast)]
        mode: ModeArg,
    },
}

fn main() -> ExitCode {
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute {
            max_edges,
            mode,
            cache,
        } => cmd_compute(max_edges as usize, mode.into(), &cache),
        Command::Verify {
            suite,
            max_edges,
            cache,
            report,
            inject_perturbation,
        } => verify::cmd_verify(
            suite,
            max_edges as usize,
            &cache,
            report.as_deref(),
            inject_perturbation,
        ),
        Command::Export { format, out, cache } => cmd_export(format, &out, &cache),
        Command::Bench {
            sizes,
            report,
            single,
            mode,
        } => match single {
            Some(edges) => bench::cmd_bench_single(edges as usize, mode.into()),
            None => bench::cmd_bench(
                &sizes.iter().map(|&s| s as usize).collect::<Vec<_>>(),
                report.as_deref(),
            ),
        },
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

/// Applies the `ISING_THREADS` budget to the global worker pool.
fn configure_threads() -> Result<(), String> {
    let Some(raw) = std::env::var_os(THREADS_VAR) else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let threads: usize = text
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got {text:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("could not apply the {THREADS_VAR} budget: {e}"))
}

/// Loads the cache when the file exists, distinguishing "absent" from
/// "present but corrupt" — the latter is refused, never recomputed over.
fn load_if_present(cache: &Path) -> anyhow::Result<Option<CoeffTable>> {
    if !cache.exists() {
        return Ok(None);
    }
    let table = CoeffTable::load(cache)
        .with_context(|| format!("refusing to touch the cache at {}", cache.display()))?;
    Ok(Some(table))
}

fn print_table_summary(table: &CoeffTable, elapsed: Option<std::time::Duration>) {
    let top_genus = table
        .rows()
        .iter()
        .map(|r| r.genus)
        .max()
        .map_or_else(|| "-".into(), |g| g.to_string());
    let timing = elapsed.map_or(String::new(), |d| format!(" in {:.2?}", d));
    println!(
        "table: {} edges, {} rows, top genus {}{}",
        table.max_edges(),
        table.rows().len(),
        top_genus,
        timing
    );
}

fn cmd_compute(max_edges: usize, mode: Mode, cache: &Path) -> anyhow::Result<ExitCode> {
    let target = max_edges / 3 * 3;
    if target != max_edges {
        eprintln!("note: sizes are whole multiples of 3; computing through {target} edges");
    }
    let _lock = CacheLock::acquire(cache)?;
    let start = Instant::now();
    let (mut state, resumed_from) = match load_if_present(cache)? {
        Some(table) if table.max_edges() >= target => {
            println!(
                "cache {} already reaches {} edges; nothing to recompute",
                cache.display(),
                table.max_edges()
            );
            print_table_summary(&table, None);
            return Ok(ExitCode::SUCCESS);
        }
        Some(table) => {
            let present = table.max_edges();
            (table.to_state(mode)?, present)
        }
        None => (SolveState::new(mode), 0),
    };
    if resumed_from > 0 {
        println!("resuming from {resumed_from} edges");
    }
    // checkpoint after every completed size so interruption never loses
    // more than one grade triple
    let mut done = resumed_from;
    let mut table = CoeffTable::empty();
    while done < target {
        done = (done + 3).min(target);
        state.compute_up_to(done)?;
        table = CoeffTable::from_state(&state)?;
        table.save(cache)?;
    }
    println!("computed through {target} edges, cache {}", cache.display());
    print_table_summary(&table, Some(start.elapsed()));
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(format: FormatArg, out: &Path, cache: &Path) -> anyhow::Result<ExitCode> {
    let _lock = CacheLock::acquire(cache)?;
    let table = load_if_present(cache)?.unwrap_or_else(CoeffTable::empty);
    let content = match format {
        FormatArg::Json => table.to_json(),
        FormatArg::Csv => table.to_csv(),
    };
    std::fs::write(out, &content)
        .with_context(|| format!("writing export to {}", out.display()))?;
    println!(
        "exported {} rows ({} edges) to {}",
        table.rows().len(),
        table.max_edges(),
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

/// Shared by verify: fail fast when the cache is shallower than the
/// requested verification depth.
fn require_depth(table: &CoeffTable, depth: usize) -> anyhow::Result<()> {
    if table.max_edges() < depth {
        bail!(
            "cache depth {} is below the requested {} edges; run `ising compute --max-edges {}` first",
            table.max_edges(),
            depth,
            depth
        );
    }
    Ok(())
}
