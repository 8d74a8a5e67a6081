//! Exact detection of `K` non-overlapping template occurrences in a noisy 2D
//! measurement.
//!
//! Under i.i.d. Gaussian noise the maximum-likelihood placements maximize the
//! summed correlation of the template with the measurement, subject to the
//! occurrences not overlapping. Treating each placement as a bid priced by
//! its correlation turns this into a winner-determination problem with a
//! cardinality constraint, solved exactly by [`solver::wdp_solve`].
//!
//! - [`grid`], [`correlate`], [`template`], [`allocation`]: data types, pricing
//!   and the overlap test.
//! - [`solver`]: branch-and-bound, greedy baseline, brute-force oracle.
//! - [`select`]: gap-statistic estimate of an unknown `K`.
//! - [`sim`]: seeded synthetic measurements.
//! - [`eval`]: detection scoring and the benchmark sweep.

pub mod allocation;
pub mod correlate;
mod error;
pub mod eval;
pub mod grid;
pub mod seed;
pub mod select;
pub mod sim;
pub mod solver;
pub mod template;

pub use allocation::{allocation_revenue, conflicts, Allocation, Bid};
pub use correlate::correlate;
pub use error::{Error, Result};
pub use grid::{Grid, Location};
pub use solver::{brute_force_solve, greedy_detect, sort_bids, wdp_solve, SolveOptions, SolveReport, SolverKind, SortedBids};
pub use template::{disk_template, ones_template};
