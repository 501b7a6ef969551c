//! Agent-based simulation of teams adapting to NK task landscapes at two
//! levels at once: individual agents learn and forget sub-solutions, while a
//! recurrent second-price auction decides who sits on the team.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! and `*32` aliases below fix the precision.

pub mod agent;
pub mod auction;
pub mod engine;
pub mod error;
pub mod landscape;
pub mod metrics;
pub mod scalar;
pub mod seed;

pub use agent::{Agent, ResidualContext, Weights};
pub use auction::{allocate, auction_times, compute_bid, run_auction, AuctionOutcome, AuctionSchedule, Bid};
pub use engine::{
    cell_config, run_all, run_grid, run_grid_with, run_scenario, run_single, run_single_traced, Grid, GridCell,
    RunResult, ScenarioConfig, Simulation, StepRecord,
};
pub use error::{Error, Result};
pub use landscape::{FullSolution, InteractionMatrix, Landscape, SubSolution};
pub use metrics::{manhattan_distance, normalize_and_average, ScenarioResult};
pub use scalar::Scalar;

/// Complexity levels of the standard grid.
pub const COMPLEXITIES: [usize; 3] = [3, 5, 11];
/// Learning probabilities of the standard grid.
pub const LEARNING_PROBABILITIES: [f64; 6] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5];
/// Auction counts of the standard grid.
pub const AUCTION_COUNTS: [usize; 3] = [1, 20, 200];

pub type Landscape64 = Landscape<f64>;
pub type Landscape32 = Landscape<f32>;
pub type Weights64 = Weights<f64>;
pub type Weights32 = Weights<f32>;
pub type Bid64 = Bid<f64>;
pub type AuctionOutcome64 = AuctionOutcome<f64>;
pub type RunResult64 = RunResult<f64>;
pub type RunResult32 = RunResult<f32>;
pub type ScenarioResult64 = ScenarioResult<f64>;
pub type ScenarioResult32 = ScenarioResult<f32>;
pub type Grid64 = Grid<f64>;
pub type Grid32 = Grid<f32>;
pub type Simulation64 = Simulation<f64>;
pub type Simulation32 = Simulation<f32>;
