//! Second-price team formation.
//!
//! Every agent bids the best expected utility it can attain under the
//! previous period's residual decisions. Per slot the highest bidder joins
//! the team and is charged the second-highest bid. Payments are recorded
//! only; they never enter performance or utility.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::agent::{Agent, ResidualContext, Weights};
use crate::error::{Error, Result};
use crate::landscape::{Evaluate, FullSolution};
use crate::scalar::Scalar;

/// Timesteps `1..=t_horizon` at which auctions are held: every
/// `t_horizon / tau` steps starting at `t = 1`, so exactly `tau` of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuctionSchedule {
    t_horizon: usize,
    tau: usize,
}

impl AuctionSchedule {
    pub fn new(t_horizon: usize, tau: usize) -> Result<Self> {
        if tau == 0 {
            return Err(Error::ZeroAuctions);
        }
        if t_horizon == 0 || !t_horizon.is_multiple_of(tau) {
            return Err(Error::ScheduleIndivisible { t_horizon, tau });
        }
        Ok(Self { t_horizon, tau })
    }

    pub fn interval(&self) -> usize {
        self.t_horizon / self.tau
    }

    /// `t` is 1-based.
    pub fn is_auction(&self, t: usize) -> bool {
        (1..=self.t_horizon).contains(&t) && (t - 1).is_multiple_of(self.interval())
    }

    pub fn times(&self) -> Vec<usize> {
        (1..=self.t_horizon).step_by(self.interval()).collect()
    }
}

/// Shorthand for [`AuctionSchedule::times`].
pub fn auction_times(t_horizon: usize, tau: usize) -> Result<Vec<usize>> {
    Ok(AuctionSchedule::new(t_horizon, tau)?.times())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bid<T> {
    pub agent_id: usize,
    pub slot: usize,
    pub amount: T,
}

/// Best attainable expected utility of `agent` under `ctx`.
pub fn compute_bid<T: Scalar, E: Evaluate<T>>(agent: &Agent, ctx: &ResidualContext, landscape: &E, weights: &Weights<T>) -> Bid<T> {
    Bid {
        agent_id: agent.id(),
        slot: agent.slot(),
        amount: agent.best_utility(ctx, landscape, weights),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuctionOutcome<T> {
    /// Winning agent id per slot.
    pub winners: Vec<usize>,
    /// Second-highest bid per slot.
    pub payments: Vec<T>,
    /// Every bid, ordered by slot then agent id.
    pub bids: Vec<Bid<T>>,
}

impl<T: Scalar> AuctionOutcome<T> {
    pub fn winning_bid(&self, slot: usize) -> T {
        let w = self.winners[slot];
        self.bids
            .iter()
            .find(|b| b.agent_id == w)
            .map(|b| b.amount)
            .expect("winner has a bid")
    }
}

/// Allocates each of `m` slots to its highest bidder. Exact ties at the top
/// are broken uniformly at random; the result does not depend on the order
/// of `bids`.
pub fn allocate<T: Scalar, R: Rng + ?Sized>(bids: &[Bid<T>], m: usize, rng: &mut R) -> Result<AuctionOutcome<T>> {
    let mut sorted = bids.to_vec();
    sorted.sort_by_key(|b| (b.slot, b.agent_id));
    if let Some(b) = sorted.iter().find(|b| b.slot >= m) {
        return Err(Error::SlotOutOfRange { slot: b.slot, m });
    }
    let mut winners = Vec::with_capacity(m);
    let mut payments = Vec::with_capacity(m);
    for slot in 0..m {
        let lo = sorted.partition_point(|b| b.slot < slot);
        let hi = sorted.partition_point(|b| b.slot <= slot);
        let slot_bids = &sorted[lo..hi];
        if slot_bids.len() < 2 {
            return Err(Error::TooFewCandidates { j: slot_bids.len() });
        }
        let mut top = 0usize;
        let mut ties = 1u32;
        for (i, b) in slot_bids.iter().enumerate().skip(1) {
            if b.amount > slot_bids[top].amount {
                top = i;
                ties = 1;
            } else if b.amount == slot_bids[top].amount {
                ties += 1;
                if rng.random_range(0..ties) == 0 {
                    top = i;
                }
            }
        }
        let second = slot_bids
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != top)
            .map(|(_, b)| b.amount)
            .fold(T::neg_infinity(), T::max);
        winners.push(slot_bids[top].agent_id);
        payments.push(second);
    }
    Ok(AuctionOutcome {
        winners,
        payments,
        bids: sorted,
    })
}

/// Collects every agent's bid against `previous`, allocates the slots and
/// updates membership flags.
pub fn run_auction<T: Scalar, E: Evaluate<T>, R: Rng + ?Sized>(
    agents: &mut [Agent],
    previous: &FullSolution,
    landscape: &E,
    weights: &Weights<T>,
    rng: &mut R,
) -> Result<AuctionOutcome<T>> {
    let ctx = ResidualContext::new(*previous);
    let bids: Vec<Bid<T>> = agents
        .iter()
        .map(|a| compute_bid(a, &ctx, landscape, weights))
        .collect();
    let outcome = allocate(&bids, landscape.m(), rng)?;
    for a in agents.iter_mut() {
        let member = outcome.winners[a.slot()] == a.id();
        a.set_member(member);
    }
    Ok(outcome)
}
