use std::path::PathBuf;

use clap::Parser;
use wdpdetect::disk_template;

#[derive(Parser)]
pub struct Args {
    /// Side length in pixels.
    #[arg(long)]
    w: usize,
    /// Disk radius in pixels.
    #[arg(long)]
    radius: f64,
    #[arg(long, default_value_t = 1.0)]
    inside: f64,
    #[arg(long, default_value_t = 0.0)]
    outside: f64,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> anyhow::Result<()> {
    let grid = disk_template(args.w, args.radius, args.inside, args.outside)?;
    match args.out {
        Some(path) => grid.save(path)?,
        None => grid.write_csv(std::io::stdout().lock())?,
    }
    Ok(())
}
