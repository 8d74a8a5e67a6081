use clap::Parser;
use wdpdetect::eval::oracle_check;

#[derive(Parser)]
pub struct Args {
    #[arg(long, default_value_t = 200)]
    instances: usize,
    /// Largest anchor-grid side.
    #[arg(long, default_value_t = 8)]
    max_side: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print every case, not just the totals.
    #[arg(long)]
    verbose: bool,
}

pub fn run(args: Args) -> anyhow::Result<()> {
    let summary = oracle_check(args.instances, args.max_side, args.seed)?;
    if args.verbose {
        println!("{}", serde_json::to_string(&summary)?);
    } else {
        println!(
            "{}",
            serde_json::json!({
                "instances": summary.instances,
                "feasible": summary.feasible,
                "mismatches": summary.mismatches,
            })
        );
    }
    if summary.mismatches > 0 {
        anyhow::bail!("{} instances disagree with brute force", summary.mismatches);
    }
    Ok(())
}
