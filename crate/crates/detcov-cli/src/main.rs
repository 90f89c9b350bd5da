//! Command-line tool for scoring keypoint spread over images, comparing
//! detectors statistically, and planning detector combinations.
//!
//! Exit codes: 0 on success, 1 when some or all processed items failed,
//! 2 on usage or configuration errors.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "detcov",
    version,
    about = "Measure keypoint spatial coverage and plan detector combinations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score how widely each file's keypoints spread over the image
    Coverage(commands::coverage::CoverageArgs),
    /// Score the merged keypoints of several detectors on one image
    Mutual(commands::mutual::MutualArgs),
    /// Report each file's convex-hull share of the image area
    Hull(commands::hull::HullArgs),
    /// Batch-score a dataset manifest and compare its detectors
    Evaluate(commands::evaluate::EvaluateArgs),
    /// Compare two detectors' pass/fail tallies
    Mcnemar(commands::mcnemar::McnemarArgs),
    /// Plan detector combinations for manifest pairs
    Framework(commands::framework::FrameworkArgs),
    /// Generate synthetic keypoint sets
    Synth(commands::synth::SynthArgs),
    /// Time coverage computation at several set sizes
    Bench(commands::bench::BenchArgs),
}

/// How a command run ended short of a configuration error.
pub enum Outcome {
    /// Every processed item succeeded.
    Clean,
    /// At least the failing items are marked in the report.
    Partial,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Coverage(args) => commands::coverage::run(args),
        Command::Mutual(args) => commands::mutual::run(args),
        Command::Hull(args) => commands::hull::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args),
        Command::Mcnemar(args) => commands::mcnemar::run(args),
        Command::Framework(args) => commands::framework::run(args),
        Command::Synth(args) => commands::synth::run(args),
        Command::Bench(args) => commands::bench::run(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
