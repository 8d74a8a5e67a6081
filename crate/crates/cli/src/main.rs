//! `wdpdetect`: simulate measurements, detect template occurrences, estimate
//! their number, and run benchmark sweeps.
//!
//! Primary results go to stdout (JSON or CSV) or to files under `--out`;
//! diagnostics go to stderr. Exit codes: 0 success, 1 runtime failure,
//! 2 usage error.

mod bench;
mod detect;
mod oracle;
mod simulate;
mod template;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "wdpdetect", version, about = "Exact detection of non-overlapping template occurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic measurement and its ground truth.
    Simulate(simulate::Args),
    /// Detect occurrences in a measurement.
    Detect(detect::Args),
    /// Estimate the number of occurrences with the gap statistic.
    EstimateK(detect::EstimateArgs),
    /// Run an F1-versus-SNR sweep.
    Bench(bench::Args),
    /// Cross-check the exact solver against brute force on random instances.
    Oracle(oracle::Args),
    /// Write a disk-shaped template as CSV.
    Template(template::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => simulate::run(args),
        Command::Detect(args) => detect::run(args),
        Command::EstimateK(args) => detect::run_estimate(args),
        Command::Bench(args) => bench::run(args),
        Command::Oracle(args) => oracle::run(args),
        Command::Template(args) => template::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Template from `--template FILE`, else an all-ones `--w` square.
fn load_template(path: Option<&std::path::Path>, w: Option<usize>) -> anyhow::Result<wdpdetect::Grid> {
    use anyhow::Context;
    match (path, w) {
        (Some(p), _) => wdpdetect::Grid::load(p).with_context(|| format!("reading template {}", p.display())),
        (None, Some(w)) => Ok(wdpdetect::ones_template(w)?),
        (None, None) => anyhow::bail!("one of --w or --template is required"),
    }
}
