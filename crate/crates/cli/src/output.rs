//! File formats.
//!
//! Numbers are written in shortest round-trip decimal form so repeated
//! runs diff cleanly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use teamnk::{Grid64, RunResult64, ScenarioConfig, ScenarioResult64};

use crate::CliError;

/// Row label of an auction count in the contour grid.
pub fn tau_label(tau: usize) -> &'static str {
    match tau {
        1 => "initial",
        20 => "moderate",
        200 => "high",
        _ => "custom",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub k: usize,
    pub p: f64,
    pub tau: usize,
    pub label: String,
    pub seed: u64,
    pub runs: usize,
    pub md: f64,
    pub md_se: f64,
    pub per_run_md: Vec<f64>,
}

impl CellSummary {
    pub fn from_result(r: &ScenarioResult64) -> Self {
        Self {
            k: r.config.k,
            p: r.config.p,
            tau: r.config.tau,
            label: tau_label(r.config.tau).to_string(),
            seed: r.config.master_seed,
            runs: r.n_runs,
            md: r.md,
            md_se: r.md_standard_error(),
            per_run_md: r.per_run_md.clone(),
        }
    }
}

/// Contents of `summary.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mode: String,
    pub config: ScenarioConfig,
    pub master_seed: u64,
    pub ks: Vec<usize>,
    pub ps: Vec<f64>,
    pub taus: Vec<usize>,
    pub cells: Vec<CellSummary>,
}

impl Summary {
    pub fn from_grid(grid: &Grid64) -> Self {
        Self {
            mode: "grid".into(),
            config: grid.base.clone(),
            master_seed: grid.base.master_seed,
            ks: grid.ks.clone(),
            ps: grid.ps.clone(),
            taus: grid.taus.clone(),
            cells: grid.cells.iter().map(|c| CellSummary::from_result(&c.result)).collect(),
        }
    }

    pub fn from_scenario(r: &ScenarioResult64) -> Self {
        Self {
            mode: "scenario".into(),
            config: r.config.clone(),
            master_seed: r.config.master_seed,
            ks: vec![r.config.k],
            ps: vec![r.config.p],
            taus: vec![r.config.tau],
            cells: vec![CellSummary::from_result(r)],
        }
    }

    pub fn cell(&self, k: usize, p: f64, tau: usize) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.k == k && c.p == p && c.tau == tau)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The contour CSV for complexity `k`, or the coordinates it lacks.
    pub fn md_grid_csv(&self, k: usize) -> Result<String, CliError> {
        let missing: Vec<(usize, f64, usize)> = self
            .taus
            .iter()
            .flat_map(|&tau| self.ps.iter().map(move |&p| (k, p, tau)))
            .filter(|&(k, p, tau)| self.cell(k, p, tau).is_none())
            .collect();
        if !missing.is_empty() {
            return Err(CliError::PartialGrid(missing));
        }
        let mut out = String::from("tau,label");
        for p in &self.ps {
            write!(out, ",{p}").unwrap();
        }
        out.push('\n');
        for &tau in &self.taus {
            write!(out, "{tau},{}", tau_label(tau)).unwrap();
            for &p in &self.ps {
                write!(out, ",{}", self.cell(k, p, tau).unwrap().md).unwrap();
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Writes `dir/{K}/md_grid.csv` for every complexity and `dir/summary.json`.
/// A grid with missing cells is refused before anything is written.
pub fn emit_contour_grid(grid: &Grid64, dir: &Path) -> Result<(), CliError> {
    let missing = grid.missing();
    if !missing.is_empty() {
        return Err(CliError::PartialGrid(missing));
    }
    let summary = Summary::from_grid(grid);
    let csvs = grid
        .ks
        .iter()
        .map(|&k| Ok((k, summary.md_grid_csv(k)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    for (k, csv) in csvs {
        write_file(&dir.join(k.to_string()).join("md_grid.csv"), &csv)?;
    }
    write_file(&dir.join("summary.json"), &summary.to_json())
}

/// One row per timestep.
pub fn trace_csv(run: &RunResult64) -> String {
    let mut out = String::from("t,performance,normalized,auction,team,solution,memory_sizes\n");
    let Some(trace) = &run.trace else {
        return out;
    };
    for rec in trace {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            rec.t,
            rec.performance,
            rec.performance / run.optimum,
            u8::from(rec.auction.is_some()),
            join(&rec.team),
            rec.solution,
            join(&rec.memory_sizes)
        )
        .unwrap();
    }
    out
}

/// Every bid of every auction in the run, with its outcome.
pub fn auction_audit_csv(run: &RunResult64) -> String {
    let mut out = String::from("t,slot,agent_id,bid,won,payment\n");
    for rec in run.trace.iter().flatten() {
        let Some(a) = &rec.auction else { continue };
        for b in &a.bids {
            let won = a.winners[b.slot] == b.agent_id;
            let payment = if won { a.payments[b.slot].to_string() } else { String::new() };
            writeln!(out, "{},{},{},{},{},{}", rec.t, b.slot, b.agent_id, b.amount, u8::from(won), payment).unwrap();
        }
    }
    out
}

/// `t,mean_normalized` for a scenario.
pub fn series_csv(r: &ScenarioResult64) -> String {
    let mut out = String::from("t,mean_normalized\n");
    for (i, v) in r.mean_normalized_series.iter().enumerate() {
        writeln!(out, "{},{v}", i + 1).unwrap();
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| io_err(parent, e))?;
    }
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

pub(crate) fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from(path),
        source,
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(";")
}
