//! Run orchestration and scenario sweeps.
//!
//! A run draws, from its own seeded stream and in this order: the
//! contribution tables, each agent's initial memory (agents in id order,
//! agent `i` serving slot `i / j`), and a random status-quo solution `d_0`.
//! Each timestep `t = 1..=T` then proceeds as
//!
//! 1. auction, if `t` is an auction time, with bids against `d_{t-1}`;
//! 2. every adapting agent (team members, or everyone with off-team
//!    learning) learns and then forgets, in id order;
//! 3. every member picks its best known sub-solution against `d_{t-1}`;
//! 4. the picks are concatenated into `d_t` and its performance recorded.
//!
//! After the horizon the run's optimum is found by exhaustive search.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agent::{Agent, ResidualContext, Weights};
use crate::auction::{run_auction, AuctionOutcome, AuctionSchedule};
use crate::error::{Error, Result};
use crate::landscape::{
    Evaluate, FullSolution, InteractionMatrix, Landscape, SubSolution, TabulatedLandscape, DEFAULT_SEARCH_CAP,
};
use crate::metrics::ScenarioResult;
use crate::scalar::Scalar;
use crate::seed::{self, RunRng};

/// Parameters of one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Interdependencies per decision.
    pub k: usize,
    /// Per-step probability of learning, and independently of forgetting.
    pub p: f64,
    /// Number of auctions over the horizon.
    pub tau: usize,
    pub t_horizon: usize,
    pub n: usize,
    pub m: usize,
    pub alpha: f64,
    pub beta: f64,
    pub runs: usize,
    /// Candidates per slot.
    pub j: usize,
    /// Initial memory size.
    pub q: usize,
    pub master_seed: u64,
    /// Whether agents outside the team also learn and forget.
    pub offteam_learning: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            k: 3,
            p: 0.1,
            tau: 1,
            t_horizon: 200,
            n: 12,
            m: 3,
            alpha: 0.5,
            beta: 0.5,
            runs: 1500,
            j: 5,
            q: 4,
            master_seed: 0,
            offteam_learning: false,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidDimension(format!("n={}, m={}", self.n, self.m)));
        }
        if !self.n.is_multiple_of(self.m) {
            return Err(Error::IndivisibleTask { n: self.n, m: self.m });
        }
        if self.k > self.n - 1 {
            return Err(Error::ComplexityTooHigh { n: self.n, k: self.k });
        }
        if self.n > DEFAULT_SEARCH_CAP {
            return Err(Error::SearchTooLarge {
                n: self.n,
                cap: DEFAULT_SEARCH_CAP,
            });
        }
        AuctionSchedule::new(self.t_horizon, self.tau)?;
        Weights::new(self.alpha, self.beta)?;
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::Probability(self.p));
        }
        if self.j < 2 {
            return Err(Error::TooFewCandidates { j: self.j });
        }
        let space = 1usize << self.s();
        if self.q == 0 || self.q >= space {
            return Err(Error::MemoryOutOfRange { q: self.q, space });
        }
        if self.runs == 0 {
            return Err(Error::NoRuns);
        }
        Ok(())
    }

    /// Decisions per subtask.
    pub fn s(&self) -> usize {
        self.n / self.m
    }

    /// Population size `j * m`.
    pub fn population(&self) -> usize {
        self.j * self.m
    }
}

/// What happened in one timestep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord<T> {
    /// 1-based.
    pub t: usize,
    pub auction: Option<AuctionOutcome<T>>,
    /// Member agent id per slot.
    pub team: Vec<usize>,
    pub solution: FullSolution,
    pub performance: T,
    /// Memory size of each member, by slot, after adaptation.
    pub memory_sizes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult<T> {
    pub run_seed: u64,
    /// Team performance of `d_t` for `t = 1..=T`.
    pub performance_series: Vec<T>,
    /// Highest team performance on the run's landscape.
    pub optimum: T,
    pub optimum_solution: FullSolution,
    pub auctions_held: usize,
    pub trace: Option<Vec<StepRecord<T>>>,
}

/// State of a single run.
#[derive(Debug, Clone)]
pub struct Simulation<T> {
    cfg: ScenarioConfig,
    landscape: TabulatedLandscape<T>,
    weights: Weights<T>,
    schedule: AuctionSchedule,
    agents: Vec<Agent>,
    team: Vec<usize>,
    previous: FullSolution,
    t: usize,
    auctions_held: usize,
    rng: RunRng,
}

impl<T: Scalar> Simulation<T> {
    /// Sets up a run with a freshly generated landscape.
    pub fn new(cfg: &ScenarioConfig, run_seed: u64) -> Result<Self> {
        cfg.validate()?;
        let mut rng = seed::run_rng(run_seed);
        let matrix = InteractionMatrix::stylized(cfg.n, cfg.m, cfg.k)?;
        let landscape = Landscape::generate(matrix, &mut rng);
        Self::assemble(cfg, landscape, rng)
    }

    /// Sets up a run on a given landscape; the stream starts at the agents.
    pub fn with_landscape(cfg: &ScenarioConfig, landscape: Landscape<T>, run_seed: u64) -> Result<Self> {
        cfg.validate()?;
        if landscape.n() != cfg.n || landscape.m() != cfg.m {
            return Err(Error::InvalidDimension(format!(
                "landscape is n={}, m={}; config is n={}, m={}",
                landscape.n(),
                landscape.m(),
                cfg.n,
                cfg.m
            )));
        }
        Self::assemble(cfg, landscape, seed::run_rng(run_seed))
    }

    fn assemble(cfg: &ScenarioConfig, landscape: Landscape<T>, mut rng: RunRng) -> Result<Self> {
        let s = cfg.s();
        let agents = (0..cfg.population())
            .map(|id| Agent::init(id, id / cfg.j, s, cfg.q, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let previous = FullSolution::random(cfg.n, &mut rng);
        let weights = Weights::new(
            T::from_f64(cfg.alpha).ok_or(Error::WeightSum {
                alpha: cfg.alpha,
                beta: cfg.beta,
            })?,
            T::from_f64(cfg.beta).ok_or(Error::WeightSum {
                alpha: cfg.alpha,
                beta: cfg.beta,
            })?,
        )?;
        Ok(Self {
            cfg: cfg.clone(),
            landscape: TabulatedLandscape::new(landscape),
            weights,
            schedule: AuctionSchedule::new(cfg.t_horizon, cfg.tau)?,
            agents,
            team: Vec::new(),
            previous,
            t: 0,
            auctions_held: 0,
            rng,
        })
    }

    pub fn landscape(&self) -> &Landscape<T> {
        self.landscape.landscape()
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    /// Member id per slot; empty before the first step.
    pub fn team(&self) -> &[usize] {
        &self.team
    }

    /// The most recently implemented solution (`d_0` before the first step).
    pub fn current_solution(&self) -> FullSolution {
        self.previous
    }

    pub fn time(&self) -> usize {
        self.t
    }

    pub fn is_finished(&self) -> bool {
        self.t >= self.cfg.t_horizon
    }

    pub fn auctions_held(&self) -> usize {
        self.auctions_held
    }

    /// Advances one timestep.
    pub fn step(&mut self) -> Result<StepRecord<T>> {
        if self.is_finished() {
            return Err(Error::InvalidDimension(format!(
                "horizon {} already reached",
                self.cfg.t_horizon
            )));
        }
        self.t += 1;
        let ctx = ResidualContext::new(self.previous);

        let auction = if self.schedule.is_auction(self.t) {
            let outcome = run_auction(
                &mut self.agents,
                &self.previous,
                &self.landscape,
                &self.weights,
                &mut self.rng,
            )?;
            self.team = outcome.winners.clone();
            self.auctions_held += 1;
            Some(outcome)
        } else {
            None
        };

        if self.cfg.p > 0.0 {
            let p = self.cfg.p;
            for agent in self.agents.iter_mut() {
                if agent.is_member() || self.cfg.offteam_learning {
                    agent.learn(p, &mut self.rng)?;
                    agent.forget(&ctx, &self.landscape, &self.weights, p, &mut self.rng)?;
                }
            }
        }

        let picks: Vec<SubSolution> = self
            .team
            .iter()
            .map(|&id| {
                self.agents[id].choose_solution(&ctx, &self.landscape, &self.weights, &mut self.rng)
            })
            .collect();
        let solution = FullSolution::concat(&picks)?;
        let performance = self.landscape.team_value(&solution);
        self.previous = solution;

        Ok(StepRecord {
            t: self.t,
            auction,
            team: self.team.clone(),
            solution,
            performance,
            memory_sizes: self.team.iter().map(|&id| self.agents[id].memory().len()).collect(),
        })
    }

    /// Runs the remaining timesteps and the exhaustive optimum search.
    pub fn finish(mut self, run_seed: u64, keep_trace: bool) -> Result<RunResult<T>> {
        let mut series = Vec::with_capacity(self.cfg.t_horizon);
        let mut trace = keep_trace.then(Vec::new);
        while !self.is_finished() {
            let rec = self.step()?;
            series.push(rec.performance);
            if let Some(tr) = trace.as_mut() {
                tr.push(rec);
            }
        }
        let (optimum_solution, optimum) = self.landscape.global_optimum_capped(DEFAULT_SEARCH_CAP)?;
        Ok(RunResult {
            run_seed,
            performance_series: series,
            optimum,
            optimum_solution,
            auctions_held: self.auctions_held,
            trace,
        })
    }
}

/// One complete run.
pub fn run_single<T: Scalar>(cfg: &ScenarioConfig, run_seed: u64) -> Result<RunResult<T>> {
    Simulation::new(cfg, run_seed)?.finish(run_seed, false)
}

/// One complete run keeping every [`StepRecord`].
pub fn run_single_traced<T: Scalar>(cfg: &ScenarioConfig, run_seed: u64) -> Result<RunResult<T>> {
    Simulation::new(cfg, run_seed)?.finish(run_seed, true)
}

/// All `cfg.runs` runs of a scenario, in run-index order. Runs execute on
/// the current rayon pool; results do not depend on the thread count.
pub fn run_all<T: Scalar>(cfg: &ScenarioConfig) -> Result<Vec<RunResult<T>>> {
    cfg.validate()?;
    (0..cfg.runs)
        .into_par_iter()
        .map(|i| run_single(cfg, seed::run_seed(cfg.master_seed, i as u64)))
        .collect()
}

pub fn run_scenario<T: Scalar>(cfg: &ScenarioConfig) -> Result<ScenarioResult<T>> {
    let runs = run_all(cfg)?;
    ScenarioResult::from_runs(cfg.clone(), &runs)
}

/// The configuration of grid cell `(k, p, tau)`, seeded from the base seed
/// and the cell coordinates.
pub fn cell_config(base: &ScenarioConfig, k: usize, p: f64, tau: usize) -> ScenarioConfig {
    ScenarioConfig {
        k,
        p,
        tau,
        master_seed: seed::cell_seed(base.master_seed, k, p, tau),
        ..base.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCell<T> {
    pub k: usize,
    pub p: f64,
    pub tau: usize,
    pub result: ScenarioResult<T>,
}

impl<T: Scalar> GridCell<T> {
    pub fn md(&self) -> T {
        self.result.md
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid<T> {
    pub base: ScenarioConfig,
    pub ks: Vec<usize>,
    pub ps: Vec<f64>,
    pub taus: Vec<usize>,
    /// Ordered k-major, then tau, then p.
    pub cells: Vec<GridCell<T>>,
}

impl<T: Scalar> Grid<T> {
    pub fn cell(&self, k: usize, p: f64, tau: usize) -> Option<&GridCell<T>> {
        self.cells.iter().find(|c| c.k == k && c.p == p && c.tau == tau)
    }

    pub fn md(&self, k: usize, p: f64, tau: usize) -> Option<T> {
        self.cell(k, p, tau).map(GridCell::md)
    }

    /// Coordinates with no cell.
    pub fn missing(&self) -> Vec<(usize, f64, usize)> {
        let mut out = Vec::new();
        for &k in &self.ks {
            for &tau in &self.taus {
                for &p in &self.ps {
                    if self.cell(k, p, tau).is_none() {
                        out.push((k, p, tau));
                    }
                }
            }
        }
        out
    }
}

/// Runs every `(k, p, tau)` combination. Cells run one after another; runs
/// within a cell run in parallel.
pub fn run_grid<T: Scalar>(base: &ScenarioConfig, ks: &[usize], ps: &[f64], taus: &[usize]) -> Result<Grid<T>> {
    run_grid_with(base, ks, ps, taus, |_| {})
}

/// [`run_grid`] with a callback after each finished cell.
pub fn run_grid_with<T: Scalar>(
    base: &ScenarioConfig,
    ks: &[usize],
    ps: &[f64],
    taus: &[usize],
    mut on_cell: impl FnMut(&GridCell<T>),
) -> Result<Grid<T>> {
    let mut cells = Vec::with_capacity(ks.len() * ps.len() * taus.len());
    for &k in ks {
        for &tau in taus {
            for &p in ps {
                let cfg = cell_config(base, k, p, tau);
                let result = run_scenario(&cfg)?;
                let cell = GridCell { k, p, tau, result };
                on_cell(&cell);
                cells.push(cell);
            }
        }
    }
    Ok(Grid {
        base: base.clone(),
        ks: ks.to_vec(),
        ps: ps.to_vec(),
        taus: taus.to_vec(),
        cells,
    })
}
