//! Command-line front end for the `teamnk` simulator.
//!
//! ```text
//! teamnk --mode grid --runs 1500 --seed 42 --out out
//! ```
//!
//! Outputs:
//! - `grid`: `out/{K}/md_grid.csv` per complexity and `out/summary.json`;
//! - `scenario`: `out/summary.json` and `out/series.csv`;
//! - `single`: `out/single.json` and `out/landscape.csv`.
//!
//! With `--trace`, single and scenario runs also write
//! `out/traces/run_{i}.csv` and `out/traces/auctions_{i}.csv`.
//! `TEAMNK_THREADS` caps the worker threads; outputs do not depend on it.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use teamnk::{
    run_grid_with, run_single_traced, seed, RunResult64, ScenarioConfig, ScenarioResult64, Simulation64,
    AUCTION_COUNTS, COMPLEXITIES, LEARNING_PROBABILITIES,
};

pub mod config;
pub mod output;

pub use config::parse_config;
pub use output::{emit_contour_grid, Summary};

pub const THREADS_ENV: &str = "TEAMNK_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config key `{key}`: {message}")]
    Config { key: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("grid is missing cells (k, p, tau): {0:?}")]
    PartialGrid(Vec<(usize, f64, usize)>),
    #[error(transparent)]
    Model(#[from] teamnk::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Single,
    Scenario,
    Grid,
}

#[derive(Debug, Parser)]
#[command(name = "teamnk", about = "Multi-level adaptation on NK landscapes")]
pub struct Args {
    /// Key-value config file; defaults apply when absent.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "scenario")]
    pub mode: Mode,
    /// Overrides the config's master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the config's number of runs.
    #[arg(long)]
    pub runs: Option<usize>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Write per-timestep traces.
    #[arg(long)]
    pub trace: bool,
}

/// Builds the effective configuration from the file and flag overrides.
pub fn load_config(args: &Args) -> Result<ScenarioConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| output::io_err(path, e))?;
            parse_config(&text)?
        }
        None => ScenarioConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.master_seed = s;
    }
    if let Some(r) = args.runs {
        cfg.runs = r;
    }
    cfg.validate().map_err(|e| CliError::Config {
        key: config::offending_key(&e).into(),
        message: e.to_string(),
    })?;
    Ok(cfg)
}

/// Runs the command on a pool sized by [`THREADS_ENV`].
pub fn run(args: &Args) -> Result<(), CliError> {
    let cfg = load_config(args)?;
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Config {
            key: THREADS_ENV.into(),
            message: format!("cannot parse {v:?}"),
        })?,
        Err(_) => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| execute(args.mode, &cfg, &args.out, args.trace))
}

pub fn execute(mode: Mode, cfg: &ScenarioConfig, out: &Path, trace: bool) -> Result<(), CliError> {
    match mode {
        Mode::Single => single(cfg, out, trace),
        Mode::Scenario => scenario(cfg, out, trace),
        Mode::Grid => {
            let grid = run_grid_with(cfg, &COMPLEXITIES, &LEARNING_PROBABILITIES, &AUCTION_COUNTS, |c| {
                eprintln!("k={} tau={} p={}: MD={}", c.k, c.tau, c.p, c.md());
            })?;
            emit_contour_grid(&grid, out)
        }
    }
}

#[derive(Serialize)]
struct SingleSummary<'a> {
    config: &'a ScenarioConfig,
    run_seed: u64,
    optimum: f64,
    optimum_solution: String,
    md: f64,
    auctions_held: usize,
}

fn single(cfg: &ScenarioConfig, out: &Path, trace: bool) -> Result<(), CliError> {
    let run_seed = seed::run_seed(cfg.master_seed, 0);
    let sim = Simulation64::new(cfg, run_seed)?;
    let mut landscape = Vec::new();
    sim.landscape().write_csv(&mut landscape).expect("in-memory write");
    let run = sim.finish(run_seed, trace)?;
    let normalized = teamnk::metrics::normalized_series(&run, 0)?;
    let summary = SingleSummary {
        config: cfg,
        run_seed,
        optimum: run.optimum,
        optimum_solution: run.optimum_solution.to_string(),
        md: teamnk::manhattan_distance(&normalized),
        auctions_held: run.auctions_held,
    };
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    output::write_file(&out.join("single.json"), &json)?;
    output::write_file(&out.join("landscape.csv"), &String::from_utf8(landscape).expect("utf-8"))?;
    if trace {
        write_traces(out, &[run])?;
    }
    Ok(())
}

fn scenario(cfg: &ScenarioConfig, out: &Path, trace: bool) -> Result<(), CliError> {
    let runs: Vec<RunResult64> = if trace {
        (0..cfg.runs)
            .into_par_iter()
            .map(|i| run_single_traced(cfg, seed::run_seed(cfg.master_seed, i as u64)))
            .collect::<Result<_, _>>()?
    } else {
        teamnk::run_all(cfg)?
    };
    let result = ScenarioResult64::from_runs(cfg.clone(), &runs)?;
    output::write_file(&out.join("summary.json"), &Summary::from_scenario(&result).to_json())?;
    output::write_file(&out.join("series.csv"), &output::series_csv(&result))?;
    if trace {
        write_traces(out, &runs)?;
    }
    Ok(())
}

fn write_traces(out: &Path, runs: &[RunResult64]) -> Result<(), CliError> {
    let dir = out.join("traces");
    for (i, run) in runs.iter().enumerate() {
        output::write_file(&dir.join(format!("run_{i}.csv")), &output::trace_csv(run))?;
        output::write_file(&dir.join(format!("auctions_{i}.csv")), &output::auction_audit_csv(run))?;
    }
    Ok(())
}
