//! The `dlrwave` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::harness::{
    convergence_table_with, reference_solution, snapshot_series, ConvergenceCell, ExperimentConfig, RangePolicy,
};
use crate::io::{create_dir_all, parse_config, write_csv, write_matrix_csv, write_pgm, PgmRange};
use crate::lowrank::{lowrank_integrate, LowRankPair};
use crate::model::sample_initial;
use crate::splitting::SplittingSetup;

pub const CACHE_ENV: &str = "DLRWAVE_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".dlrwave-cache";

#[derive(Debug, Parser)]
#[command(name = "dlrwave", version, about = "Low-rank splitting solver for the strongly damped wave equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convergence table of the low-rank scheme against a fine reference.
    Converge(CommonArgs),
    /// One low-rank run; writes the final displacement as a CSV matrix.
    Simulate(CommonArgs),
    /// Full-rank and low-rank displacement images at the snapshot times.
    Snapshot(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Override a config entry, e.g. `grid.N=64`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Print per-cell timings.
    #[arg(short, long)]
    pub verbose: bool,
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Converge(a) | Command::Simulate(a) | Command::Snapshot(a) => a,
        }
    }
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

/// Exit code for an outcome: 0 success, 2 blow-up, 1 anything else.
pub fn exit_code(outcome: &Result<()>) -> i32 {
    match outcome {
        Ok(()) => 0,
        Err(e) if e.is_blow_up() => 2,
        Err(_) => 1,
    }
}

/// One JSON line describing a failure.
pub fn error_line(e: &Error) -> String {
    serde_json::json!({ "error": e.kind(), "message": e.to_string() }).to_string()
}

/// Runs a parsed invocation, reporting failures on stderr.
pub fn run(cli: &Cli) -> i32 {
    let outcome = execute(cli);
    if let Err(e) = &outcome {
        eprintln!("{}", error_line(e));
    }
    exit_code(&outcome)
}

pub fn execute(cli: &Cli) -> Result<()> {
    let args = cli.command.args();
    let config = parse_config(&args.config, &args.overrides)?;
    match &cli.command {
        Command::Converge(_) => converge(&config, args),
        Command::Simulate(_) => simulate(&config, args),
        Command::Snapshot(_) => snapshot(&config, args),
    }
}

fn say(line: std::fmt::Arguments) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

fn converge(config: &ExperimentConfig, args: &CommonArgs) -> Result<()> {
    let cache = cache_dir();
    let reference = reference_solution(config, Some(&cache))?;
    let cells = convergence_table_with(config, &reference, |c: &ConvergenceCell| {
        if args.verbose {
            say(format_args!(
                "rank={} M={} relerr={:.6e} status={} wall={:.3}s",
                c.rank,
                c.steps,
                c.relerr,
                c.status.as_str(),
                c.wall_time.as_secs_f64()
            ));
        }
    })?;
    create_dir_all(&args.out)?;
    let path = args.out.join(format!("{}_convergence.csv", config.preset.name()));
    write_csv(&cells, &path)?;
    say(format_args!("wrote {}", path.display()));
    Ok(())
}

fn simulate(config: &ExperimentConfig, args: &CommonArgs) -> Result<()> {
    let (steps, rank) = (config.m_list[0], config.ranks[0]);
    let mut setup = SplittingSetup::new(config.grid, config.params, config.nonlinear.clone());
    setup.fn_substeps = config.fn_substeps;
    let state0 = sample_initial(&config.grid, &config.preset);
    let pair0 = LowRankPair::from_state(&state0, rank, rank)?;
    let pair = lowrank_integrate(&pair0, &setup, &config.time_grid(steps)?, |_, _, _| {})?;
    let p = pair.p.to_dense();
    create_dir_all(&args.out)?;
    let path = args.out.join(format!("{}_M{steps}_r{rank}_P.csv", config.preset.name()));
    write_matrix_csv(&p, &path)?;
    say(format_args!(
        "preset={} N={} M={} rank={} T={} max_abs={:.6e} fro={:.6e} out={}",
        config.preset.name(),
        config.grid.nx,
        steps,
        rank,
        config.t_final,
        p.max_abs(),
        p.frobenius_norm(),
        path.display()
    ));
    Ok(())
}

/// File name of one snapshot frame.
pub fn snapshot_name(preset: &str, method: &str, t: f64) -> String {
    format!("{preset}_{method}_{t}.pgm")
}

fn snapshot(config: &ExperimentConfig, args: &CommonArgs) -> Result<()> {
    let series = snapshot_series(config, &config.snapshot_times)?;
    let range = match config.snapshot_range {
        RangePolicy::Series => {
            let (lo, hi) = series.value_range();
            PgmRange::Fixed { lo, hi }
        }
        RangePolicy::Frame => PgmRange::Frame,
    };
    create_dir_all(&args.out)?;
    write_series(config.preset.name(), &series.times, &series.fullrank, &series.lowrank, range, &args.out)?;
    for (i, t) in series.times.iter().enumerate() {
        say(format_args!(
            "t={t} max_abs_fullrank={:.6e} max_abs_lowrank={:.6e}",
            series.fullrank[i].max_abs(),
            series.lowrank[i].max_abs()
        ));
    }
    Ok(())
}

fn write_series(
    preset: &str,
    times: &[f64],
    fullrank: &[crate::linalg::DenseMatrix],
    lowrank: &[crate::linalg::DenseMatrix],
    range: PgmRange,
    out: &Path,
) -> Result<()> {
    for (method, frames) in [("fullrank", fullrank), ("lowrank", lowrank)] {
        for (t, frame) in times.iter().zip(frames) {
            write_pgm(frame, &out.join(snapshot_name(preset, method, *t)), range)?;
        }
    }
    Ok(())
}
