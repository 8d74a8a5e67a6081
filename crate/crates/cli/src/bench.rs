use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::Duration;

use clap::Parser;
use wdpdetect::eval::{run_benchmark, write_records_jsonl, write_summary_csv, BenchConfig, KMode};
use wdpdetect::select::NullSolver;
use wdpdetect::sim::Separation;
use wdpdetect::SolverKind;

#[derive(Parser)]
pub struct Args {
    /// Comma-separated SNR values in dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    snr_list: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value = "known")]
    k_mode: KMode,
    #[arg(long, value_delimiter = ',', default_value = "exact,greedy")]
    solvers: Vec<SolverKind>,
    #[arg(long, default_value_t = 40)]
    rows: usize,
    #[arg(long, default_value_t = 40)]
    cols: usize,
    #[arg(long, conflicts_with = "template")]
    w: Option<usize>,
    #[arg(long)]
    template: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value = "dense")]
    separation: Separation,
    #[arg(long)]
    tight_pair: bool,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long, default_value_t = 50)]
    null_reps: usize,
    #[arg(long, default_value = "exact")]
    null_solver: NullSolver,
    /// Per-solve time limit in seconds; slower trials are recorded as failed.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: Args) -> anyhow::Result<()> {
    let template = crate::load_template(args.template.as_deref(), args.w.or(Some(3)))?;
    let config = BenchConfig {
        rows: args.rows,
        cols: args.cols,
        template,
        k: args.k,
        separation: args.separation,
        tight_pair: args.tight_pair,
        snr_db: args.snr_list,
        trials: args.trials,
        solvers: args.solvers,
        k_mode: args.k_mode,
        k_max: args.k_max,
        null_reps: args.null_reps,
        null_solver: args.null_solver,
        base_seed: args.seed,
        time_limit: args.time_limit.map(Duration::from_secs_f64),
    };
    let output = run_benchmark(&config);

    fs::create_dir_all(&args.out)?;
    write_summary_csv(&output.summary, BufWriter::new(File::create(args.out.join("summary.csv"))?))?;
    write_records_jsonl(&output.records, BufWriter::new(File::create(args.out.join("trials.jsonl"))?))?;

    for row in &output.summary {
        let k_acc = row.k_accuracy.map(|v| format!(" k_accuracy={v:.3}")).unwrap_or_default();
        println!(
            "{} snr={} trials={} failed={} mean_f1={:.4}{}",
            row.solver, row.snr_db, row.trials, row.failed, row.mean_f1, k_acc
        );
    }
    for r in output.records.iter().filter(|r| r.failed()) {
        eprintln!(
            "trial {} at {} dB ({}) failed: {}",
            r.trial,
            r.snr_db,
            r.solver,
            r.error.as_deref().unwrap_or("")
        );
    }
    if !output.records.is_empty() && output.records.iter().all(|r| r.failed()) {
        anyhow::bail!("every trial failed");
    }
    Ok(())
}
