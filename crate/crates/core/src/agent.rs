//! Bounded-memory agents: endowment, expected utility under a frozen
//! residual, choice, and probabilistic learning and forgetting.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::landscape::{Evaluate, FullSolution, SubSolution};
use crate::scalar::{ordered_sum, Scalar};

/// Weights on own-slot and residual performance in the utility.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weights<T> {
    alpha: T,
    beta: T,
}

impl<T: Scalar> Weights<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        let tol = T::epsilon() * T::from_count(4);
        if !alpha.is_finite() || !beta.is_finite() || (alpha + beta - T::one()).abs() > tol {
            return Err(Error::WeightSum {
                alpha: alpha.to_f64_lossy(),
                beta: beta.to_f64_lossy(),
            });
        }
        Ok(Self { alpha, beta })
    }

    pub fn equal() -> Self {
        let half = T::one() / T::from_count(2);
        Self {
            alpha: half,
            beta: half,
        }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }
}

/// The previously implemented full solution, seen from one slot: every
/// decision outside that slot is held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidualContext {
    previous: FullSolution,
}

impl ResidualContext {
    pub fn new(previous: FullSolution) -> Self {
        Self { previous }
    }

    pub fn previous(&self) -> &FullSolution {
        &self.previous
    }

    /// The full solution obtained by implementing `s` against the residual.
    pub fn with(&self, s: SubSolution) -> FullSolution {
        self.previous.with_sub(s)
    }

    /// What the slot currently implements.
    pub fn implemented(&self, slot: usize, s: usize) -> SubSolution {
        self.previous.sub(slot, s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Agent {
    id: usize,
    slot: usize,
    width: usize,
    // Sorted by encoding, no duplicates.
    memory: Vec<SubSolution>,
    is_member: bool,
}

impl Agent {
    /// Endows the agent with `q` distinct sub-solutions drawn uniformly
    /// without replacement from the `2^s` possibilities.
    pub fn init<R: Rng + ?Sized>(id: usize, slot: usize, s: usize, q: usize, rng: &mut R) -> Result<Self> {
        let space = space_size(s)?;
        if q == 0 || q >= space {
            return Err(Error::MemoryOutOfRange { q, space });
        }
        let mut memory: Vec<SubSolution> = index::sample(rng, space, q)
            .into_iter()
            .map(|code| SubSolution::new(slot, s, code as u32))
            .collect();
        memory.sort_unstable();
        Ok(Self {
            id,
            slot,
            width: s,
            memory,
            is_member: false,
        })
    }

    /// An agent with an explicit memory.
    pub fn with_memory(id: usize, slot: usize, s: usize, known: impl IntoIterator<Item = SubSolution>) -> Result<Self> {
        let space = space_size(s)?;
        let mut memory: Vec<SubSolution> = known.into_iter().collect();
        for e in &memory {
            if e.slot() != slot || e.len() != s {
                return Err(Error::SlotOutOfRange { slot: e.slot(), m: slot + 1 });
            }
        }
        memory.sort_unstable();
        memory.dedup();
        if memory.is_empty() || memory.len() > space {
            return Err(Error::MemoryOutOfRange {
                q: memory.len(),
                space,
            });
        }
        Ok(Self {
            id,
            slot,
            width: s,
            memory,
            is_member: false,
        })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn slot(&self) -> usize {
        self.slot
    }

    pub fn memory(&self) -> &[SubSolution] {
        &self.memory
    }

    pub fn knows(&self, s: &SubSolution) -> bool {
        self.memory.binary_search(s).is_ok()
    }

    pub fn is_member(&self) -> bool {
        self.is_member
    }

    pub fn set_member(&mut self, member: bool) {
        self.is_member = member;
    }

    /// Utility of implementing `s` while the other slots keep their
    /// decisions from `ctx`: `alpha * own + beta * mean(other slots)`.
    pub fn expected_utility<T: Scalar, E: Evaluate<T>>(
        &self,
        s: SubSolution,
        ctx: &ResidualContext,
        landscape: &E,
        weights: &Weights<T>,
    ) -> Result<T> {
        if s.slot() != self.slot || s.len() != self.width {
            return Err(Error::SlotOutOfRange {
                slot: s.slot(),
                m: landscape.m(),
            });
        }
        if ctx.previous().len() != landscape.n() {
            return Err(Error::LengthMismatch {
                expected: landscape.n(),
                got: ctx.previous().len(),
            });
        }
        Ok(utility(self.slot, s, ctx, landscape, weights))
    }

    /// Best known entry under `ctx`; exact ties are broken uniformly at
    /// random from `rng`.
    pub fn choose_solution<T: Scalar, E: Evaluate<T>, R: Rng + ?Sized>(
        &self,
        ctx: &ResidualContext,
        landscape: &E,
        weights: &Weights<T>,
        rng: &mut R,
    ) -> SubSolution {
        let (best, _) = self.best_entry(ctx, landscape, weights, rng);
        best
    }

    /// Highest expected utility over the memory.
    pub fn best_utility<T: Scalar, E: Evaluate<T>>(&self, ctx: &ResidualContext, landscape: &E, weights: &Weights<T>) -> T {
        self.memory
            .iter()
            .map(|&s| utility(self.slot, s, ctx, landscape, weights))
            .fold(T::neg_infinity(), T::max)
    }

    fn best_entry<T: Scalar, E: Evaluate<T>, R: Rng + ?Sized>(
        &self,
        ctx: &ResidualContext,
        landscape: &E,
        weights: &Weights<T>,
        rng: &mut R,
    ) -> (SubSolution, T) {
        let mut best = self.memory[0];
        let mut best_u = utility(self.slot, best, ctx, landscape, weights);
        let mut ties = 1u32;
        for &s in &self.memory[1..] {
            let u = utility(self.slot, s, ctx, landscape, weights);
            if u > best_u {
                best = s;
                best_u = u;
                ties = 1;
            } else if u == best_u {
                // Reservoir sampling over the tied entries.
                ties += 1;
                if rng.random_range(0..ties) == 0 {
                    best = s;
                }
            }
        }
        (best, best_u)
    }

    /// With probability `p`, adds one unknown sub-solution at Hamming
    /// distance one from some known entry, chosen uniformly. Returns the
    /// added entry. `p = 0` consumes no randomness.
    pub fn learn<R: Rng + ?Sized>(&mut self, p: f64, rng: &mut R) -> Result<Option<SubSolution>> {
        check_probability(p)?;
        if p == 0.0 || !rng.random_bool(p) {
            return Ok(None);
        }
        let candidates = self.learnable();
        if candidates.is_empty() {
            return Ok(None);
        }
        let pick = candidates[rng.random_range(0..candidates.len())];
        let at = self.memory.binary_search(&pick).unwrap_err();
        self.memory.insert(at, pick);
        Ok(Some(pick))
    }

    /// Unknown neighbours of the memory, sorted by encoding.
    pub fn learnable(&self) -> Vec<SubSolution> {
        let mut out: Vec<SubSolution> = self
            .memory
            .iter()
            .flat_map(|e| (0..self.width).map(move |i| e.flipped(i)))
            .filter(|c| !self.knows(c))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// With probability `p`, drops the lowest-utility entry under `ctx`.
    /// The slot's implemented sub-solution is never dropped, nor the last
    /// entry. Among equal lowest utilities the lowest encoding goes.
    /// Returns the removed entry. `p = 0` consumes no randomness.
    pub fn forget<T: Scalar, E: Evaluate<T>, R: Rng + ?Sized>(
        &mut self,
        ctx: &ResidualContext,
        landscape: &E,
        weights: &Weights<T>,
        p: f64,
        rng: &mut R,
    ) -> Result<Option<SubSolution>> {
        check_probability(p)?;
        if p == 0.0 || !rng.random_bool(p) {
            return Ok(None);
        }
        if self.memory.len() <= 1 {
            return Ok(None);
        }
        let implemented = ctx.implemented(self.slot, self.width);
        let mut worst: Option<(usize, T)> = None;
        for (i, &s) in self.memory.iter().enumerate() {
            if s == implemented {
                continue;
            }
            let u = utility(self.slot, s, ctx, landscape, weights);
            if worst.is_none_or(|(_, w)| u < w) {
                worst = Some((i, u));
            }
        }
        Ok(worst.map(|(i, _)| self.memory.remove(i)))
    }
}

fn space_size(s: usize) -> Result<usize> {
    if s == 0 || s > 24 {
        return Err(Error::InvalidDimension(format!("subtask width {s}")));
    }
    Ok(1usize << s)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Probability(p))
    }
}

#[inline]
pub(crate) fn utility<T: Scalar, E: Evaluate<T>>(
    slot: usize,
    s: SubSolution,
    ctx: &ResidualContext,
    landscape: &E,
    weights: &Weights<T>,
) -> T {
    let d = ctx.with(s);
    let m = landscape.m();
    let own = landscape.slot_performance(&d, slot);
    if m == 1 {
        return weights.alpha * own;
    }
    let residual = ordered_sum(
        (0..m)
            .filter(|&r| r != slot)
            .map(|r| landscape.slot_performance(&d, r)),
    ) / T::from_count(m - 1);
    weights.alpha * own + weights.beta * residual
}
