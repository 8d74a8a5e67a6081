//! Winner determination over template placements.
//!
//! Every valid anchor is a bid priced by correlation. Choosing exactly `k`
//! mutually non-overlapping bids of maximum total price is the constrained
//! maximum-likelihood detection problem. [`wdp_solve`] solves it exactly with
//! a depth-first branch-and-bound over the price-sorted bid list,
//! [`greedy_detect`] is the sequential-maximum baseline, and
//! [`brute_force_solve`] enumerates subsets for small instances.

mod bids;
mod brute;
mod greedy;
mod search;

pub use bids::{sort_bids, SortedBids};
pub use brute::{binomial, brute_force_solve, brute_force_solve_with, DEFAULT_ENUMERATION_BUDGET};
pub use greedy::greedy_detect;
pub use search::{upper_bound_h, wdp_solve, wdp_solve_in_order, wdp_solve_with, Bound, SolveOptions, SolveReport};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which algorithm produces detections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Exact,
    Greedy,
    Brute,
}

impl SolverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::Greedy => "greedy",
            SolverKind::Brute => "brute",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(SolverKind::Exact),
            "greedy" => Ok(SolverKind::Greedy),
            "brute" => Ok(SolverKind::Brute),
            other => Err(format!("unknown solver {other:?} (expected exact, greedy or brute)")),
        }
    }
}

/// Runs the chosen solver and reports in a common shape.
pub fn solve(kind: SolverKind, bids: &SortedBids, k: usize, options: &SolveOptions) -> crate::Result<SolveReport> {
    match kind {
        SolverKind::Exact => wdp_solve_with(bids, k, options),
        SolverKind::Greedy => {
            let start = std::time::Instant::now();
            let allocation = greedy_detect(bids, k)?;
            Ok(SolveReport::from_allocation(allocation, start.elapsed().as_secs_f64()))
        }
        SolverKind::Brute => brute_force_solve(bids, k),
    }
}
