//! F1-versus-SNR sweeps over freshly generated measurements.
//!
//! Each `(snr, trial)` cell gets its own seeds derived from the base seed, so
//! the records do not depend on execution order. A failure in one trial is
//! recorded and the sweep continues.

use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::matching::{match_detections, score};
use crate::correlate::correlate;
use crate::error::Result;
use crate::grid::{Grid, Location};
use crate::seed;
use crate::select::{default_k_max, estimate_k_with, GapConfig, NullSolver};
use crate::sim::{generate, Separation, SimSpec, DEFAULT_MAX_DRAWS};
use crate::solver::{solve, sort_bids, SolveOptions, SolverKind};

pub const SUMMARY_HEADER: &str = "solver,snr_db,trials,mean_f1,mean_precision,mean_tpr,k_accuracy,mean_nodes,mean_seconds";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KMode {
    /// Solvers receive the true number of occurrences.
    Known,
    /// Solvers estimate it with the gap statistic.
    Gap,
}

impl FromStr for KMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "known" => Ok(KMode::Known),
            "gap" => Ok(KMode::Gap),
            other => Err(format!("unknown k mode {other:?} (expected known or gap)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub rows: usize,
    pub cols: usize,
    pub template: Grid,
    pub k: usize,
    pub separation: Separation,
    pub tight_pair: bool,
    pub snr_db: Vec<f64>,
    pub trials: usize,
    pub solvers: Vec<SolverKind>,
    pub k_mode: KMode,
    /// Gap mode only; `None` uses [`default_k_max`].
    pub k_max: Option<usize>,
    pub null_reps: usize,
    pub null_solver: NullSolver,
    pub base_seed: u64,
    /// Per solver run; exceeding it fails the trial for that solver.
    pub time_limit: Option<Duration>,
}

impl BenchConfig {
    /// The dense known-K setting: 40x40, four 3x3 all-ones occurrences with a tight pair.
    pub fn dense_default(snr_db: Vec<f64>, trials: usize, base_seed: u64) -> Self {
        Self {
            rows: 40,
            cols: 40,
            template: Grid::filled(3, 3, 1.0).expect("3x3 grid"),
            k: 4,
            separation: Separation::Dense,
            tight_pair: true,
            snr_db,
            trials,
            solvers: vec![SolverKind::Exact, SolverKind::Greedy],
            k_mode: KMode::Known,
            k_max: None,
            null_reps: 50,
            null_solver: NullSolver::Exact,
            base_seed,
            time_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub snr_db: f64,
    pub trial: usize,
    pub seed: u64,
    pub rows: usize,
    pub cols: usize,
    pub w: usize,
    pub separation: Separation,
    pub sigma: Option<f64>,
    pub solver: SolverKind,
    pub k_true: usize,
    pub k_input: Option<usize>,
    pub k_hat: Option<usize>,
    pub truth: Vec<Location>,
    pub detections: Vec<Location>,
    pub objective: Option<f64>,
    pub precision: f64,
    pub tpr: f64,
    pub f1: f64,
    pub nodes_explored: u64,
    pub seconds: f64,
    pub error: Option<String>,
}

impl TrialRecord {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub solver: SolverKind,
    pub snr_db: f64,
    /// Successful trials; failures are excluded from every mean.
    pub trials: usize,
    pub failed: usize,
    pub mean_f1: f64,
    pub mean_precision: f64,
    pub mean_tpr: f64,
    /// Fraction of trials with `k_hat == K`, gap mode only.
    pub k_accuracy: Option<f64>,
    pub mean_nodes: f64,
    pub mean_seconds: f64,
}

#[derive(Clone, Debug, Default)]
pub struct BenchOutput {
    pub records: Vec<TrialRecord>,
    pub summary: Vec<SummaryRow>,
}

pub fn run_benchmark(config: &BenchConfig) -> BenchOutput {
    run_benchmark_with(config, |_| {})
}

/// Like [`run_benchmark`], calling `progress` after each trial record.
pub fn run_benchmark_with(config: &BenchConfig, mut progress: impl FnMut(&TrialRecord)) -> BenchOutput {
    let mut records = Vec::with_capacity(config.snr_db.len() * config.trials * config.solvers.len());
    for (si, &snr) in config.snr_db.iter().enumerate() {
        for trial in 0..config.trials {
            for record in run_trial(config, si, snr, trial) {
                progress(&record);
                records.push(record);
            }
        }
    }
    let summary = summarize(config, &records);
    BenchOutput { records, summary }
}

fn run_trial(config: &BenchConfig, snr_index: usize, snr: f64, trial: usize) -> Vec<TrialRecord> {
    let sim_seed = seed::derive(config.base_seed, &[snr_index as u64, trial as u64, 0]);
    let gap_seed = seed::derive(config.base_seed, &[snr_index as u64, trial as u64, 1]);
    let w = config.template.rows();
    let spec = SimSpec {
        n_rows: config.rows,
        n_cols: config.cols,
        template: config.template.clone(),
        k: config.k,
        separation: config.separation,
        snr_db: snr,
        rng_seed: sim_seed,
        require_tight_pair: config.tight_pair,
        max_draws: DEFAULT_MAX_DRAWS,
    };
    let blank = |solver: SolverKind| TrialRecord {
        snr_db: snr,
        trial,
        seed: sim_seed,
        rows: config.rows,
        cols: config.cols,
        w,
        separation: config.separation,
        sigma: None,
        solver,
        k_true: config.k,
        k_input: None,
        k_hat: None,
        truth: Vec::new(),
        detections: Vec::new(),
        objective: None,
        precision: 0.0,
        tpr: 0.0,
        f1: 0.0,
        nodes_explored: 0,
        seconds: 0.0,
        error: None,
    };

    let instance = match generate(&spec) {
        Ok(inst) => inst,
        Err(e) => {
            return config
                .solvers
                .iter()
                .map(|&s| TrialRecord {
                    error: Some(format!("generation: {e}")),
                    ..blank(s)
                })
                .collect()
        }
    };

    config
        .solvers
        .iter()
        .map(|&solver| {
            let mut record = TrialRecord {
                sigma: Some(instance.sigma),
                truth: instance.true_locations.clone(),
                ..blank(solver)
            };
            let start = Instant::now();
            let outcome = detect(config, &instance.noisy, solver, gap_seed);
            record.seconds = start.elapsed().as_secs_f64();
            match outcome {
                Ok(found) => {
                    let matched = match_detections(&instance.true_locations, &found.locations, w);
                    let s = score(&matched, found.locations.len(), instance.true_locations.len());
                    record.k_input = Some(found.k);
                    record.k_hat = found.k_hat;
                    record.objective = Some(found.objective);
                    record.nodes_explored = found.nodes;
                    record.detections = found.locations;
                    record.precision = s.precision;
                    record.tpr = s.tpr;
                    record.f1 = s.f1;
                }
                Err(e) => record.error = Some(e.to_string()),
            }
            record
        })
        .collect()
}

struct Found {
    locations: Vec<Location>,
    objective: f64,
    k: usize,
    k_hat: Option<usize>,
    nodes: u64,
}

fn detect(config: &BenchConfig, y: &Grid, solver: SolverKind, gap_seed: u64) -> Result<Found> {
    let w = config.template.rows();
    let options = SolveOptions {
        time_limit: config.time_limit,
        ..Default::default()
    };
    match config.k_mode {
        KMode::Known => {
            let bids = sort_bids(&correlate(y, &config.template)?, w);
            let report = solve(solver, &bids, config.k, &options)?;
            Ok(Found {
                locations: report.allocation.locations(),
                objective: report.objective,
                k: config.k,
                k_hat: None,
                nodes: report.nodes_explored,
            })
        }
        KMode::Gap => {
            // the greedy pipeline estimates K with greedy revenues throughout
            let (observed, null) = match solver {
                SolverKind::Greedy => (NullSolver::Greedy, NullSolver::Greedy),
                SolverKind::Exact => (NullSolver::Exact, config.null_solver),
                SolverKind::Brute => {
                    return Err(crate::Error::InvalidArgument(
                        "brute force is not available in gap mode".into(),
                    ))
                }
            };
            let gap = GapConfig {
                k_max: config.k_max.unwrap_or_else(|| default_k_max(config.rows, config.cols, w)),
                reps: config.null_reps,
                rng_seed: gap_seed,
                null_solver: null,
                observed_solver: observed,
                identity_null: false,
                time_limit: config.time_limit,
            };
            let profile = estimate_k_with(y, &config.template, &gap)?;
            Ok(Found {
                objective: profile.allocation.revenue(),
                locations: profile.allocation.locations(),
                k: profile.k_hat,
                k_hat: Some(profile.k_hat),
                nodes: 0,
            })
        }
    }
}

fn summarize(config: &BenchConfig, records: &[TrialRecord]) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for &snr in &config.snr_db {
        for &solver in &config.solvers {
            let cell: Vec<&TrialRecord> = records
                .iter()
                .filter(|r| r.solver == solver && r.snr_db.to_bits() == snr.to_bits())
                .collect();
            if cell.is_empty() {
                continue;
            }
            let ok: Vec<&TrialRecord> = cell.iter().copied().filter(|r| !r.failed()).collect();
            let mean = |f: &dyn Fn(&TrialRecord) -> f64| {
                if ok.is_empty() {
                    f64::NAN
                } else {
                    ok.iter().map(|r| f(r)).sum::<f64>() / ok.len() as f64
                }
            };
            rows.push(SummaryRow {
                solver,
                snr_db: snr,
                trials: ok.len(),
                failed: cell.len() - ok.len(),
                mean_f1: mean(&|r| r.f1),
                mean_precision: mean(&|r| r.precision),
                mean_tpr: mean(&|r| r.tpr),
                k_accuracy: (config.k_mode == KMode::Gap)
                    .then(|| mean(&|r| if r.k_hat == Some(r.k_true) { 1.0 } else { 0.0 })),
                mean_nodes: mean(&|r| r.nodes_explored as f64),
                mean_seconds: mean(&|r| r.seconds),
            });
        }
    }
    rows
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], mut out: W) -> Result<()> {
    writeln!(out, "{SUMMARY_HEADER}")?;
    for r in rows {
        let k_acc = r.k_accuracy.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.solver, r.snr_db, r.trials, r.mean_f1, r.mean_precision, r.mean_tpr, k_acc, r.mean_nodes, r.mean_seconds
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_records_jsonl<W: Write>(records: &[TrialRecord], mut out: W) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}
