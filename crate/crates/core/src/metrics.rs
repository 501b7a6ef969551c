//! Normalized performance and total Manhattan Distance.
//!
//! Each run's series is divided by that run's global optimum, the
//! normalized series are averaged per timestep across runs, and the total
//! Manhattan Distance sums the shortfall `1 - mean` over all timesteps.

use serde::{Deserialize, Serialize};

use crate::engine::{RunResult, ScenarioConfig};
use crate::error::{Error, Result};
use crate::scalar::{ordered_sum, Scalar};

/// Per-timestep cross-run mean of `series / optimum`, summed in run order.
pub fn normalize_and_average<T: Scalar>(results: &[RunResult<T>]) -> Result<Vec<T>> {
    let first = results.first().ok_or(Error::NoRuns)?;
    let len = first.performance_series.len();
    let mut acc = vec![T::zero(); len];
    for (run, r) in results.iter().enumerate() {
        let normalized = normalized_series(r, run)?;
        if normalized.len() != len {
            return Err(Error::SeriesLength {
                run,
                expected: len,
                got: normalized.len(),
            });
        }
        for (a, v) in acc.iter_mut().zip(normalized) {
            *a = *a + v;
        }
    }
    let count = T::from_count(results.len());
    Ok(acc.into_iter().map(|s| s / count).collect())
}

/// One run's series divided by its optimum.
pub fn normalized_series<T: Scalar>(r: &RunResult<T>, run: usize) -> Result<Vec<T>> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN optima are rejected too
    if !(r.optimum > T::zero()) {
        return Err(Error::DegenerateOptimum {
            run,
            optimum: r.optimum.to_f64_lossy(),
        });
    }
    Ok(r.performance_series.iter().map(|&v| v / r.optimum).collect())
}

/// `sum_t (1 - series[t])`.
pub fn manhattan_distance<T: Scalar>(series: &[T]) -> T {
    ordered_sum(series.iter().map(|&v| T::one() - v))
}

/// Aggregate of one scenario's runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult<T> {
    pub config: ScenarioConfig,
    pub n_runs: usize,
    pub mean_normalized_series: Vec<T>,
    /// Manhattan Distance of `mean_normalized_series`.
    pub md: T,
    /// Manhattan Distance of each run's own normalized series, by run index.
    pub per_run_md: Vec<T>,
}

impl<T: Scalar> ScenarioResult<T> {
    pub fn from_runs(config: ScenarioConfig, runs: &[RunResult<T>]) -> Result<Self> {
        let mean_normalized_series = normalize_and_average(runs)?;
        let md = manhattan_distance(&mean_normalized_series);
        let per_run_md = runs
            .iter()
            .enumerate()
            .map(|(i, r)| normalized_series(r, i).map(|s| manhattan_distance(&s)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            config,
            n_runs: runs.len(),
            mean_normalized_series,
            md,
            per_run_md,
        })
    }

    /// Standard error of `md` from the spread of the per-run distances.
    pub fn md_standard_error(&self) -> T {
        let r = self.per_run_md.len();
        if r < 2 {
            return T::zero();
        }
        let n = T::from_count(r);
        let mean = ordered_sum(self.per_run_md.iter().copied()) / n;
        let ss = ordered_sum(self.per_run_md.iter().map(|&x| (x - mean) * (x - mean)));
        (ss / T::from_count(r - 1)).sqrt() / n.sqrt()
    }
}
