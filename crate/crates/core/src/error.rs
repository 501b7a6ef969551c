use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("number of decisions {n} is not divisible by number of subtasks {m}")]
    IndivisibleTask { n: usize, m: usize },
    #[error("complexity k={k} exceeds n-1={max} for n={n}", max = n.saturating_sub(1))]
    ComplexityTooHigh { n: usize, k: usize },
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("decision index {index} out of range for n={n}")]
    DecisionOutOfRange { index: usize, n: usize },
    #[error("slot {slot} out of range for m={m}")]
    SlotOutOfRange { slot: usize, m: usize },
    #[error("solution has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("exhaustive search over 2^{n} states exceeds the cap of 2^{cap}")]
    SearchTooLarge { n: usize, cap: usize },
    #[error("initial memory q={q} must satisfy 1 <= q < {space}")]
    MemoryOutOfRange { q: usize, space: usize },
    #[error("alpha+beta must equal 1 (got alpha={alpha}, beta={beta})")]
    WeightSum { alpha: f64, beta: f64 },
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("auction count tau must be at least 1")]
    ZeroAuctions,
    #[error("time horizon {t_horizon} is not divisible by tau={tau}")]
    ScheduleIndivisible { t_horizon: usize, tau: usize },
    #[error("second price undefined: {j} candidate(s) per slot, need at least 2")]
    TooFewCandidates { j: usize },
    #[error("run {run} has non-positive optimum {optimum}")]
    DegenerateOptimum { run: usize, optimum: f64 },
    #[error("series length mismatch: run {run} has {got} steps, expected {expected}")]
    SeriesLength {
        run: usize,
        expected: usize,
        got: usize,
    },
    #[error("no runs to aggregate")]
    NoRuns,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
