use std::time::Instant;

use itertools::Itertools;

use super::{SolveReport, SortedBids};
use crate::allocation::{conflicts, Allocation};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// `n choose k`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Exhaustive search over all `k`-subsets; the small-instance oracle.
pub fn brute_force_solve(bids: &SortedBids, k: usize) -> Result<SolveReport> {
    brute_force_solve_with(bids, k, DEFAULT_ENUMERATION_BUDGET)
}

pub fn brute_force_solve_with(bids: &SortedBids, k: usize, budget: u128) -> Result<SolveReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let needed = binomial(bids.len(), k);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let start = Instant::now();
    let w = bids.width();
    let list = bids.bids();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut enumerated = 0u64;
    for subset in (0..list.len()).combinations(k) {
        enumerated += 1;
        let separated = subset
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| !conflicts(list[a].loc, list[b].loc, w));
        if !separated {
            continue;
        }
        let revenue = subset.iter().fold(0.0, |acc, &i| acc + list[i].price);
        if best.as_ref().is_none_or(|(r, _)| revenue > *r) {
            best = Some((revenue, subset));
        }
    }
    let (_, subset) = best.ok_or(Error::Infeasible { k })?;
    let allocation = Allocation::from_bids(w, subset.iter().map(|&i| list[i]))?;
    let mut report = SolveReport::from_allocation(allocation, start.elapsed().as_secs_f64());
    report.nodes_explored = enumerated;
    Ok(report)
}
