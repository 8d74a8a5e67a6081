//! Depth-first branch-and-bound over the bid list.
//!
//! The search tree is implicit. A node at depth `d` decides bid `d`: the left
//! child includes it (when it does not overlap the partial allocation), the
//! right child excludes it. Left children are explored first, so the first
//! complete allocation reached is exactly the greedy one. A node is cut when
//! too few bids remain, when too few non-overlapping bids remain, or when the
//! partial revenue plus the best `k - |partial|` remaining prices cannot beat
//! the incumbent.
//!
//! The recursion only descends on inclusion; exclusion chains are a loop, so
//! stack depth is bounded by `k` rather than by the number of bids.

use std::time::{Duration, Instant};

use super::SortedBids;
use crate::allocation::{conflicts, Allocation, Bid};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Apply the revenue bound test. Disabling it leaves only the
    /// feasibility cuts, which never change the result.
    pub prune_bound: bool,
    /// Keep a copy of the first complete allocation reached.
    pub record_first_leaf: bool,
    pub time_limit: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            prune_bound: true,
            record_first_leaf: false,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub allocation: Allocation,
    pub objective: f64,
    pub nodes_explored: u64,
    pub prunes_bound: u64,
    pub prunes_feasibility: u64,
    pub incumbent_updates: u64,
    /// Seconds.
    pub wall_time: f64,
    pub first_leaf: Option<Allocation>,
}

impl SolveReport {
    pub(crate) fn from_allocation(allocation: Allocation, wall_time: f64) -> Self {
        Self {
            objective: allocation.revenue(),
            allocation,
            nodes_explored: 0,
            prunes_bound: 0,
            prunes_feasibility: 0,
            incumbent_updates: 0,
            wall_time,
            first_leaf: None,
        }
    }
}

/// Optimistic revenue still obtainable below a node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bound {
    Finite(f64),
    /// Fewer than the required number of bids are still allowed.
    Infeasible,
}

/// Sum of the `slots` largest prices among `remainder` bids that do not
/// overlap `partial`. Conflicts among those bids themselves are ignored.
pub fn upper_bound_h(partial: &Allocation, remainder: &[Bid], slots: usize) -> Bound {
    let placed: Vec<_> = partial.bids().iter().map(|b| b.loc).collect();
    let allowed = |b: &Bid| !placed.iter().any(|&p| conflicts(p, b.loc, partial.width()));
    let sorted = remainder.windows(2).all(|w| w[0].price >= w[1].price);
    match best_remaining(remainder, allowed, slots, sorted, 0.0) {
        Some(h) => Bound::Finite(h),
        None => Bound::Infeasible,
    }
}

/// Adds the `slots` largest allowed prices onto `acc`, largest first.
///
/// Accumulating from the partial revenue in descending order makes the
/// result a true upper bound in floating point too: any leaf below the node
/// sums elementwise smaller prices in the same order, and rounded addition is
/// monotone.
fn best_remaining(
    remainder: &[Bid],
    allowed: impl Fn(&Bid) -> bool,
    slots: usize,
    sorted: bool,
    mut acc: f64,
) -> Option<f64> {
    if sorted {
        let mut found = 0;
        for bid in remainder {
            if allowed(bid) {
                acc += bid.price;
                found += 1;
                if found == slots {
                    return Some(acc);
                }
            }
        }
        return None;
    }
    // unsorted input: keep the top `slots` prices in a small descending buffer
    let mut top: Vec<f64> = Vec::with_capacity(slots + 1);
    for bid in remainder.iter().filter(|b| allowed(b)) {
        if top.len() == slots && bid.price <= top[slots - 1] {
            continue;
        }
        let pos = top.partition_point(|&p| p >= bid.price);
        top.insert(pos, bid.price);
        top.truncate(slots);
    }
    if top.len() < slots {
        return None;
    }
    Some(top.into_iter().fold(acc, |a, p| a + p))
}

/// Optimal allocation of exactly `k` non-overlapping bids.
pub fn wdp_solve(bids: &SortedBids, k: usize) -> Result<SolveReport> {
    wdp_solve_with(bids, k, &SolveOptions::default())
}

pub fn wdp_solve_with(bids: &SortedBids, k: usize, options: &SolveOptions) -> Result<SolveReport> {
    Search::new(bids.bids(), bids.width(), k, true, options)?.run()
}

/// Same search over bids in caller-chosen order. The result is still
/// optimal; only the amount of pruning depends on the order.
pub fn wdp_solve_in_order(bids: &[Bid], width: usize, k: usize, options: &SolveOptions) -> Result<SolveReport> {
    let sorted = bids.windows(2).all(|w| w[0].price >= w[1].price);
    Search::new(bids, width, k, sorted, options)?.run()
}

struct Search<'a> {
    bids: &'a [Bid],
    width: usize,
    k: usize,
    sorted: bool,
    prune_bound: bool,
    record_first_leaf: bool,
    deadline: Option<(Instant, Duration)>,
    started: Instant,

    // partial allocation: bid indices and running revenue after each push
    stack: Vec<usize>,
    revenue: Vec<f64>,

    best: Option<Vec<usize>>,
    best_revenue: f64,
    first_leaf: Option<Vec<usize>>,

    nodes: u64,
    prunes_bound: u64,
    prunes_feasibility: u64,
    updates: u64,
}

impl<'a> Search<'a> {
    fn new(bids: &'a [Bid], width: usize, k: usize, sorted: bool, options: &SolveOptions) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        if width == 0 {
            return Err(Error::InvalidArgument("template width must be at least 1".into()));
        }
        let started = Instant::now();
        Ok(Self {
            bids,
            width,
            k,
            sorted,
            prune_bound: options.prune_bound,
            record_first_leaf: options.record_first_leaf,
            deadline: options.time_limit.map(|d| (started + d, d)),
            started,
            stack: Vec::with_capacity(k),
            revenue: Vec::with_capacity(k),
            best: None,
            // -inf rather than 0: prices may be negative
            best_revenue: f64::NEG_INFINITY,
            first_leaf: None,
            nodes: 0,
            prunes_bound: 0,
            prunes_feasibility: 0,
            updates: 0,
        })
    }

    fn run(mut self) -> Result<SolveReport> {
        self.descend(0)?;
        let to_alloc = |idx: &[usize]| Allocation::from_bids(self.width, idx.iter().map(|&i| self.bids[i]));
        let best = self.best.as_deref().ok_or(Error::Infeasible { k: self.k })?;
        let allocation = to_alloc(best)?;
        let first_leaf = self.first_leaf.as_deref().map(to_alloc).transpose()?;
        Ok(SolveReport {
            objective: allocation.revenue(),
            allocation,
            nodes_explored: self.nodes,
            prunes_bound: self.prunes_bound,
            prunes_feasibility: self.prunes_feasibility,
            incumbent_updates: self.updates,
            wall_time: self.started.elapsed().as_secs_f64(),
            first_leaf,
        })
    }

    #[inline]
    fn partial_revenue(&self) -> f64 {
        self.revenue.last().copied().unwrap_or(0.0)
    }

    #[inline]
    fn allowed(&self, loc: crate::grid::Location) -> bool {
        !self.stack.iter().any(|&i| conflicts(self.bids[i].loc, loc, self.width))
    }

    /// Visits the node deciding bid `start` and, through the loop, its chain
    /// of exclusion descendants.
    fn descend(&mut self, start: usize) -> Result<()> {
        let total = self.bids.len();
        let slots = self.k - self.stack.len();
        let base = self.partial_revenue();
        for d in start..total {
            self.nodes += 1;
            if self.nodes & 0xfff == 0 {
                self.check_deadline()?;
            }
            if total - d < slots {
                self.prunes_feasibility += 1;
                return Ok(());
            }
            let bound = best_remaining(&self.bids[d..], |b| self.allowed(b.loc), slots, self.sorted, base);
            match bound {
                None => {
                    self.prunes_feasibility += 1;
                    return Ok(());
                }
                // a cut here also covers every later exclusion sibling: their
                // remainders are subsets of this one
                Some(h) if self.prune_bound && h < self.best_revenue => {
                    self.prunes_bound += 1;
                    return Ok(());
                }
                Some(_) => {}
            }
            let bid = self.bids[d];
            if self.allowed(bid.loc) {
                self.stack.push(d);
                self.revenue.push(base + bid.price);
                if slots == 1 {
                    self.leaf();
                } else {
                    self.descend(d + 1)?;
                }
                self.stack.pop();
                self.revenue.pop();
            }
        }
        Ok(())
    }

    fn leaf(&mut self) {
        self.nodes += 1;
        let value = self.partial_revenue();
        if self.record_first_leaf && self.first_leaf.is_none() {
            self.first_leaf = Some(self.stack.clone());
        }
        if value > self.best_revenue {
            self.best_revenue = value;
            self.best = Some(self.stack.clone());
            self.updates += 1;
        }
    }

    fn check_deadline(&self) -> Result<()> {
        match self.deadline {
            Some((at, limit)) if Instant::now() >= at => Err(Error::TimedOut {
                seconds: limit.as_secs_f64(),
            }),
            _ => Ok(()),
        }
    }
}
