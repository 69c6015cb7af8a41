//! Subcommands and their file outputs.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use duel_core::{run_cycle, Outcome, TpProvider, Trajectory, Winner};
use duel_experiments::{
    centered_grid, exponent_sweep, find_balanced_exponent, run_outcomes, BatchSpec,
    CalibrationResult, Execution, ShapeCensus, WinStats,
};
use serde::Serialize;

use crate::config::{parse_config, ScenarioConfig};
use crate::error::CliError;
use crate::output::{shares_dat, sweep_csv, to_json, tp_dat, trajectory_csv, write_file};

#[derive(Debug, Parser)]
#[command(
    name = "duel",
    version,
    about = "Two-firm innovation contest simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one contest and write trajectory.csv, summary.json and plot data.
    Run(RunArgs),
    /// Run one contest from a TP file.
    Replay(ReplayArgs),
    /// Estimate M's win rate and the trajectory-shape census.
    Batch(BatchArgs),
    /// Find the challenger exponent that splits wins evenly.
    Calibrate(CalibrateArgs),
    /// Win rate over a grid of challenger exponents.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Scenario TOML; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Override the number of periods.
    #[arg(long)]
    pub periods: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, conflicts_with = "tp_file")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub tp_file: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Directory for shares.dat and tp.dat; defaults to the output directory.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub tp_file: PathBuf,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub reps: Option<usize>,
    /// Base seed; replication i uses base + i.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "batch.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long)]
    pub low: Option<f64>,
    #[arg(long)]
    pub high: Option<f64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Replications per evaluated exponent.
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "calibration.json")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    /// Explicit comma-separated grid, strictly increasing.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with_all = ["center", "half_width", "points"])]
    pub grid: Option<Vec<f64>>,
    /// Grid center; defaults to the configured M exponent.
    #[arg(long)]
    pub center: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub half_width: f64,
    #[arg(long, default_value_t = 9)]
    pub points: usize,
    #[arg(long)]
    pub reps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "sweep.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub config_hash: String,
    pub tp_source: String,
    pub periods: usize,
    pub winner: Winner,
    pub final_share_h: f64,
    pub half_crossings: u32,
}

#[derive(Debug, Serialize)]
struct BatchReport<'a> {
    config_hash: String,
    base_seed: u64,
    win_stats: &'a WinStats,
    census: &'a ShapeCensus,
}

#[derive(Debug, Serialize)]
struct CalibrationReport<'a> {
    config_hash: String,
    m_exp_low: f64,
    m_exp_high: f64,
    target: f64,
    tolerance: f64,
    reps_per_eval: usize,
    base_seed: u64,
    result: &'a CalibrationResult,
}

fn load_scenario(args: &ScenarioArgs) -> Result<ScenarioConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            parse_config(&text)
                .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(periods) = args.periods {
        config.periods = periods;
    }
    config.validate()?;
    Ok(config)
}

fn load_tp_file(path: &Path) -> Result<TpProvider, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    TpProvider::parse_exogenous(&text)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Picks the TP source: flags win over the config, and exactly one must be set.
fn resolve_tp(
    config: &mut ScenarioConfig,
    seed: Option<u64>,
    tp_file: Option<PathBuf>,
) -> Result<(TpProvider, Option<PathBuf>), CliError> {
    if seed.is_some() || tp_file.is_some() {
        config.tp.seed = seed;
        config.tp.file = tp_file;
    }
    match (config.tp.seed, config.tp.file.clone()) {
        (Some(seed), None) => Ok((TpProvider::seeded(seed), None)),
        (None, Some(path)) => Ok((load_tp_file(&path)?, Some(path))),
        (None, None) => Err(CliError::Validation(
            "no TP source: pass --seed or --tp-file, or set [tp] seed/file in the config".into(),
        )),
        (Some(_), Some(_)) => Err(CliError::Validation(
            "invalid value for `tp`: set at most one of `seed` and `file`".into(),
        )),
    }
}

pub fn summarize(trajectory: &Trajectory, config_hash: String) -> RunSummary {
    let Outcome {
        winner,
        final_share_h,
        half_crossings,
    } = trajectory.outcome;
    RunSummary {
        config_hash,
        tp_source: trajectory.tp_source.clone(),
        periods: trajectory.records.len(),
        winner,
        final_share_h,
        half_crossings,
    }
}

/// Writes shares.dat and tp.dat into `dir`.
pub fn emit_plot_data(trajectory: &Trajectory, dir: &Path) -> Result<(), CliError> {
    write_file(&dir.join("shares.dat"), &shares_dat(trajectory))?;
    write_file(&dir.join("tp.dat"), &tp_dat(trajectory))
}

fn run_single(
    scenario: &ScenarioArgs,
    seed: Option<u64>,
    tp_file: Option<PathBuf>,
    out: &Path,
    plot_data: Option<&Path>,
) -> Result<RunSummary, CliError> {
    let mut config = load_scenario(scenario)?;
    let (tp, file) = resolve_tp(&mut config, seed, tp_file)?;
    let trajectory = run_cycle(&config.sim_params(), &tp).map_err(|e| match &file {
        Some(path) => CliError::Validation(format!("{}: {e}", path.display())),
        None => e.into(),
    })?;
    let summary = summarize(&trajectory, config.content_hash()?);
    write_file(&out.join("trajectory.csv"), &trajectory_csv(&trajectory))?;
    write_file(&out.join("summary.json"), &to_json(&summary))?;
    emit_plot_data(&trajectory, plot_data.unwrap_or(out))?;
    println!(
        "winner {} (h_share {:.6}) -> {}",
        summary.winner.as_str(),
        summary.final_share_h,
        out.display()
    );
    Ok(summary)
}

pub fn cmd_run(args: RunArgs) -> Result<RunSummary, CliError> {
    run_single(
        &args.scenario,
        args.seed,
        args.tp_file,
        &args.out,
        args.plot_data.as_deref(),
    )
}

pub fn cmd_replay(args: ReplayArgs) -> Result<RunSummary, CliError> {
    run_single(
        &args.scenario,
        None,
        Some(args.tp_file),
        &args.out,
        args.plot_data.as_deref(),
    )
}

pub fn cmd_batch(args: BatchArgs) -> Result<WinStats, CliError> {
    let mut config = load_scenario(&args.scenario)?;
    if let Some(reps) = args.reps {
        config.batch.reps = reps;
    }
    if let Some(seed) = args.seed {
        config.batch.base_seed = seed;
    }
    config.validate()?;
    let spec = BatchSpec {
        base_params: config.sim_params(),
        n_reps: config.batch.reps,
        base_seed: config.batch.base_seed,
    };
    let outcomes = run_outcomes(&spec, Execution::Parallel)?;
    let win_stats = WinStats::from_outcomes(&outcomes);
    let census = ShapeCensus::from_outcomes(&outcomes);
    let report = BatchReport {
        config_hash: config.content_hash()?,
        base_seed: spec.base_seed,
        win_stats: &win_stats,
        census: &census,
    };
    write_file(&args.out, &to_json(&report))?;
    println!(
        "m_win_rate {:.4} +/- {:.4}, undecided {} of {} -> {}",
        win_stats.m_win_rate,
        win_stats.standard_error,
        win_stats.undecided,
        win_stats.n_reps,
        args.out.display()
    );
    Ok(win_stats)
}

pub fn cmd_calibrate(args: CalibrateArgs) -> Result<CalibrationResult, CliError> {
    let mut config = load_scenario(&args.scenario)?;
    let c = &mut config.calibration;
    if args.low.is_some() {
        c.m_exp_low = args.low;
    }
    if args.high.is_some() {
        c.m_exp_high = args.high;
    }
    if let Some(t) = args.tolerance {
        c.tolerance = t;
    }
    if let Some(n) = args.max_iterations {
        c.max_iterations = n;
    }
    if let Some(n) = args.reps {
        c.reps_per_eval = n;
    }
    if let Some(seed) = args.seed {
        c.base_seed = seed;
    }
    config.validate()?;
    let spec = config.calibration_spec();
    let result = find_balanced_exponent(&spec)?;
    let report = CalibrationReport {
        config_hash: config.content_hash()?,
        m_exp_low: spec.m_exp_low,
        m_exp_high: spec.m_exp_high,
        target: spec.target,
        tolerance: spec.tolerance,
        reps_per_eval: spec.reps_per_eval,
        base_seed: spec.base_seed,
        result: &result,
    };
    write_file(&args.out, &to_json(&report))?;
    println!(
        "balanced m_exp {:.16e} (m_win_rate {:.4}, converged {}) -> {}",
        result.balanced_m_exp,
        result.achieved_stats.m_win_rate,
        result.converged,
        args.out.display()
    );
    Ok(result)
}

pub fn cmd_sweep(args: SweepArgs) -> Result<usize, CliError> {
    let mut config = load_scenario(&args.scenario)?;
    if let Some(reps) = args.reps {
        config.batch.reps = reps;
    }
    if let Some(seed) = args.seed {
        config.batch.base_seed = seed;
    }
    config.validate()?;
    let params = config.sim_params();
    let grid = match args.grid {
        Some(grid) => grid,
        None => {
            if args.points < 1 {
                return Err(CliError::Validation(
                    "invalid value for `points`: must be >= 1".into(),
                ));
            }
            if !(args.half_width > 0.0 && args.half_width.is_finite()) {
                return Err(CliError::Validation(
                    "invalid value for `half-width`: must be > 0".into(),
                ));
            }
            let center = args.center.unwrap_or(params.firm_m.tech_exponent);
            centered_grid(center, args.half_width, args.points)
        }
    };
    let points = exponent_sweep(&params, &grid, config.batch.reps, config.batch.base_seed)?;
    write_file(&args.out, &sweep_csv(&points))?;
    println!("{} grid points -> {}", points.len(), args.out.display());
    Ok(points.len())
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(a) => cmd_run(a).map(drop),
        Command::Replay(a) => cmd_replay(a).map(drop),
        Command::Batch(a) => cmd_batch(a).map(drop),
        Command::Calibrate(a) => cmd_calibrate(a).map(drop),
        Command::Sweep(a) => cmd_sweep(a).map(drop),
    }
}
