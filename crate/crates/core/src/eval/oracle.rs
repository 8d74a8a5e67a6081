//! Randomized cross-check of the exact solver against brute force.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::seed;
use crate::solver::{brute_force_solve, sort_bids, wdp_solve};

#[derive(Clone, Debug, Serialize)]
pub struct OracleCase {
    pub index: usize,
    pub anchor_rows: usize,
    pub anchor_cols: usize,
    pub w: usize,
    pub k: usize,
    /// `None` when no feasible allocation exists (both solvers must agree).
    pub exact: Option<f64>,
    pub brute: Option<f64>,
    pub nodes_explored: u64,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub instances: usize,
    pub feasible: usize,
    pub mismatches: usize,
    pub cases: Vec<OracleCase>,
}

/// Random instance `index`: an anchor grid of side at most `max_side`, `W` and
/// `K` in `1..=3`, standard normal prices.
pub fn random_instance(base_seed: u64, index: usize, max_side: usize) -> (Grid, usize, usize) {
    let mut rng = seed::rng(seed::derive(base_seed, &[index as u64]));
    let rows = rng.gen_range(1..=max_side);
    let cols = rng.gen_range(1..=max_side);
    let w = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=3);
    let values = (0..rows * cols).map(|_| rng.sample(StandardNormal)).collect();
    (Grid::from_raw(rows, cols, values), w, k)
}

pub fn oracle_check(instances: usize, max_side: usize, base_seed: u64) -> Result<OracleSummary> {
    if max_side == 0 {
        return Err(Error::InvalidArgument("max_side must be at least 1".into()));
    }
    let mut cases = Vec::with_capacity(instances);
    for index in 0..instances {
        let (prices, w, k) = random_instance(base_seed, index, max_side);
        let bids = sort_bids(&prices, w);
        let (exact, nodes) = match wdp_solve(&bids, k) {
            Ok(r) => (Some(r.objective), r.nodes_explored),
            Err(Error::Infeasible { .. }) => (None, 0),
            Err(e) => return Err(e),
        };
        let brute = match brute_force_solve(&bids, k) {
            Ok(r) => Some(r.objective),
            Err(Error::Infeasible { .. }) => None,
            Err(e) => return Err(e),
        };
        cases.push(OracleCase {
            index,
            anchor_rows: prices.rows(),
            anchor_cols: prices.cols(),
            w,
            k,
            agree: exact == brute,
            exact,
            brute,
            nodes_explored: nodes,
        });
    }
    Ok(OracleSummary {
        instances,
        feasible: cases.iter().filter(|c| c.exact.is_some()).count(),
        mismatches: cases.iter().filter(|c| !c.agree).count(),
        cases,
    })
}
