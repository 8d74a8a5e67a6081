use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::Context;
use clap::{ArgGroup, Parser};
use serde::Serialize;
use wdpdetect::select::{default_k_max, estimate_k_with, GapConfig, NullSolver, DEFAULT_REPS};
use wdpdetect::solver::{solve, SolveOptions};
use wdpdetect::{correlate, sort_bids, Grid, Location, SolverKind};

#[derive(Parser)]
#[command(group(ArgGroup::new("count").required(true).args(["k", "estimate_k"])))]
pub struct Args {
    #[arg(long)]
    measurement: PathBuf,
    #[arg(long, required_unless_present = "w")]
    template: Option<PathBuf>,
    /// Width of an all-ones template, instead of --template.
    #[arg(long, conflicts_with = "template")]
    w: Option<usize>,
    /// Number of occurrences, when known.
    #[arg(long)]
    k: Option<usize>,
    /// Estimate the number of occurrences with the gap statistic.
    #[arg(long)]
    estimate_k: bool,
    #[arg(long, requires = "estimate_k")]
    k_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_REPS)]
    null_reps: usize,
    #[arg(long, default_value = "exact")]
    null_solver: NullSolver,
    #[arg(long, default_value = "exact")]
    solver: SolverKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Abort the exact search after this many seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Serialize)]
struct DetectOutput {
    locations: Vec<Location>,
    objective: f64,
    solver: SolverKind,
    k: usize,
    k_hat: Option<usize>,
    nodes_explored: u64,
    prunes_bound: u64,
    prunes_feasibility: u64,
    seconds: f64,
}

fn load_inputs(measurement: &PathBuf, template: Option<&std::path::Path>, w: Option<usize>) -> anyhow::Result<(Grid, Grid)> {
    let y = Grid::load(measurement).with_context(|| format!("reading measurement {}", measurement.display()))?;
    let s = crate::load_template(template, w)?;
    Ok((y, s))
}

fn observed_solver(solver: SolverKind) -> anyhow::Result<NullSolver> {
    match solver {
        SolverKind::Exact => Ok(NullSolver::Exact),
        SolverKind::Greedy => Ok(NullSolver::Greedy),
        SolverKind::Brute => anyhow::bail!("--solver brute cannot be combined with --estimate-k"),
    }
}

pub fn run(args: Args) -> anyhow::Result<()> {
    let (y, s) = load_inputs(&args.measurement, args.template.as_deref(), args.w)?;
    let time_limit = args.time_limit.map(Duration::from_secs_f64);
    let start = Instant::now();
    let output = if args.estimate_k {
        let config = GapConfig {
            k_max: args.k_max.unwrap_or_else(|| default_k_max(y.rows(), y.cols(), s.rows())),
            reps: args.null_reps,
            rng_seed: args.seed,
            null_solver: args.null_solver,
            observed_solver: observed_solver(args.solver)?,
            identity_null: false,
            time_limit,
        };
        let profile = estimate_k_with(&y, &s, &config)?;
        for warning in &profile.warnings {
            eprintln!("warning: {warning}");
        }
        DetectOutput {
            locations: profile.allocation.locations(),
            objective: profile.allocation.revenue(),
            solver: args.solver,
            k: profile.k_hat,
            k_hat: Some(profile.k_hat),
            nodes_explored: 0,
            prunes_bound: 0,
            prunes_feasibility: 0,
            seconds: start.elapsed().as_secs_f64(),
        }
    } else {
        let k = args.k.expect("clap enforces --k or --estimate-k");
        let bids = sort_bids(&correlate(&y, &s)?, s.rows());
        let options = SolveOptions {
            time_limit,
            ..Default::default()
        };
        let report = solve(args.solver, &bids, k, &options)?;
        DetectOutput {
            locations: report.allocation.locations(),
            objective: report.objective,
            solver: args.solver,
            k,
            k_hat: None,
            nodes_explored: report.nodes_explored,
            prunes_bound: report.prunes_bound,
            prunes_feasibility: report.prunes_feasibility,
            seconds: start.elapsed().as_secs_f64(),
        }
    };
    println!("{}", serde_json::to_string(&output)?);
    Ok(())
}

#[derive(Parser)]
pub struct EstimateArgs {
    #[arg(long)]
    measurement: PathBuf,
    #[arg(long, required_unless_present = "w")]
    template: Option<PathBuf>,
    #[arg(long, conflicts_with = "template")]
    w: Option<usize>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_REPS)]
    null_reps: usize,
    #[arg(long, default_value = "exact")]
    null_solver: NullSolver,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Serialize)]
struct GapOutput {
    k_values: Vec<usize>,
    observed_revenue: Vec<f64>,
    null_mean: Vec<f64>,
    gap: Vec<f64>,
    k_hat: usize,
    locations: Vec<Location>,
    warnings: Vec<String>,
}

pub fn run_estimate(args: EstimateArgs) -> anyhow::Result<()> {
    let (y, s) = load_inputs(&args.measurement, args.template.as_deref(), args.w)?;
    let k_max = args.k_max.unwrap_or_else(|| default_k_max(y.rows(), y.cols(), s.rows()));
    let profile = estimate_k_with(&y, &s, &GapConfig::new(k_max, args.null_reps, args.seed, args.null_solver))?;
    let output = GapOutput {
        locations: profile.allocation.locations(),
        k_values: profile.k_values,
        observed_revenue: profile.observed_revenue,
        null_mean: profile.null_mean,
        gap: profile.gap,
        k_hat: profile.k_hat,
        warnings: profile.warnings,
    };
    println!("{}", serde_json::to_string(&output)?);
    Ok(())
}
