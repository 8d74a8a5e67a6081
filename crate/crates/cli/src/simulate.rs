use std::path::PathBuf;

use clap::Parser;
use serde_json::json;
use wdpdetect::sim::{generate, Separation, SimSpec, DEFAULT_MAX_DRAWS};

#[derive(Parser)]
pub struct Args {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Width of an all-ones template.
    #[arg(long, required_unless_present = "template")]
    w: Option<usize>,
    /// Template CSV instead of an all-ones square.
    #[arg(long, conflicts_with = "w")]
    template: Option<PathBuf>,
    #[arg(long)]
    k: usize,
    /// SNR in dB; `inf` disables noise.
    #[arg(long, allow_hyphen_values = true)]
    snr_db: f64,
    #[arg(long, default_value = "dense")]
    separation: Separation,
    /// Force at least one pair exactly W apart (dense only).
    #[arg(long)]
    tight_pair: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_DRAWS)]
    max_draws: u64,
    #[arg(long)]
    out: PathBuf,
}

pub fn run(args: Args) -> anyhow::Result<()> {
    let template = crate::load_template(args.template.as_deref(), args.w)?;
    let spec = SimSpec {
        n_rows: args.rows,
        n_cols: args.cols,
        template,
        k: args.k,
        separation: args.separation,
        snr_db: args.snr_db,
        rng_seed: args.seed,
        require_tight_pair: args.tight_pair,
        max_draws: args.max_draws,
    };
    let instance = generate(&spec)?;
    instance.write_to(&args.out)?;
    println!(
        "{}",
        json!({ "sigma": instance.sigma, "locations": instance.true_locations, "out": args.out })
    );
    Ok(())
}
