//! `detcov synth`: generate synthetic keypoint sets as keypoint CSV.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use detcov::io::write_csv;
use detcov::keypoint::ImageDims;
use detcov::synth;

use crate::Outcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pattern {
    /// Independent draws over the whole frame
    Uniform,
    /// Gaussian blobs around random centres
    Clustered,
    /// Cell centres of a rows-by-cols partition
    Grid,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Spatial arrangement to generate
    #[arg(long, value_enum)]
    pub pattern: Pattern,
    /// Number of points (uniform and clustered patterns)
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Number of cluster centres (clustered pattern)
    #[arg(long, default_value_t = 3, value_name = "K")]
    pub clusters: usize,
    /// Cluster spread in pixels (clustered pattern)
    #[arg(long, default_value_t = 20.0, value_name = "S")]
    pub sigma: f64,
    /// Grid rows (grid pattern)
    #[arg(long, value_name = "R")]
    pub rows: Option<u32>,
    /// Grid columns (grid pattern)
    #[arg(long, value_name = "C")]
    pub cols: Option<u32>,
    /// Frame to generate into
    #[arg(long, value_parser = super::parse_dims, value_name = "WxH")]
    pub dims: ImageDims,
    /// Random seed (uniform and clustered patterns)
    #[arg(long, default_value_t = 0, value_name = "SEED")]
    pub seed: u64,
    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

pub fn run(args: SynthArgs) -> anyhow::Result<Outcome> {
    let set = match args.pattern {
        Pattern::Uniform => {
            let n = args.n.ok_or_else(|| anyhow::anyhow!("--pattern uniform requires --n"))?;
            synth::uniform(n, args.dims, args.seed)
        }
        Pattern::Clustered => {
            let n = args.n.ok_or_else(|| anyhow::anyhow!("--pattern clustered requires --n"))?;
            if args.clusters == 0 {
                anyhow::bail!("--clusters must be at least 1");
            }
            if !(args.sigma.is_finite() && args.sigma >= 0.0) {
                anyhow::bail!("--sigma must be finite and non-negative, got {}", args.sigma);
            }
            synth::clustered(n, args.clusters, args.sigma, args.dims, args.seed)
        }
        Pattern::Grid => {
            let (Some(rows), Some(cols)) = (args.rows, args.cols) else {
                anyhow::bail!("--pattern grid requires --rows and --cols");
            };
            if rows == 0 || cols == 0 {
                anyhow::bail!("--rows and --cols must be at least 1");
            }
            synth::grid(rows, cols, args.dims)
        }
    };

    let csv = write_csv(&set);
    match &args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(Outcome::Clean)
}
