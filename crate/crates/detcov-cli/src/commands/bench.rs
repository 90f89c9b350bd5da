//! `detcov bench`: time coverage computation at several set sizes.

use std::time::Instant;

use clap::Args;
use detcov::keypoint::ImageDims;
use detcov::metrics::coverage;
use detcov::synth;
use serde::Serialize;
use serde_json::json;

use crate::Outcome;
use crate::report::{self, OutputOpts, RunReport, Table};

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Set sizes to time, comma separated
    #[arg(long, value_delimiter = ',', default_value = "1000,3348,10000", value_name = "N")]
    pub n: Vec<usize>,
    /// Repetitions per size; the median is reported
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..), value_name = "R")]
    pub reps: u32,
    /// Frame to generate into
    #[arg(long, value_parser = super::parse_dims, default_value = "1440x956", value_name = "WxH")]
    pub dims: ImageDims,
    /// Random seed for the synthetic sets
    #[arg(long, default_value_t = 0, value_name = "SEED")]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Serialize)]
struct SizeResult {
    n: usize,
    reps: u32,
    median_ms: f64,
    min_ms: f64,
    max_ms: f64,
    coverage: f64,
}

pub fn run(args: BenchArgs) -> anyhow::Result<Outcome> {
    for &n in &args.n {
        if n < 2 {
            anyhow::bail!("set sizes must be at least 2, got {n}");
        }
    }

    let mut results = Vec::new();
    for &n in &args.n {
        let set = synth::uniform(n, args.dims, args.seed);
        let mut times = Vec::with_capacity(args.reps as usize);
        let mut value = 0.0;
        for _ in 0..args.reps {
            let t0 = Instant::now();
            value = coverage(&set)?.value();
            times.push(report::elapsed_ms(t0));
        }
        times.sort_by(f64::total_cmp);
        let median = if times.len() % 2 == 1 {
            times[times.len() / 2]
        } else {
            (times[times.len() / 2 - 1] + times[times.len() / 2]) / 2.0
        };
        results.push(SizeResult {
            n,
            reps: args.reps,
            median_ms: median,
            min_ms: times[0],
            max_ms: *times.last().unwrap(),
            coverage: value,
        });
    }

    let mut rep = RunReport::new(
        "bench",
        json!({
            "n": args.n,
            "reps": args.reps,
            "dims": super::dims_string(args.dims),
            "seed": args.seed,
        }),
    );
    rep.inputs = args.n.iter().map(|n| format!("uniform n={n}")).collect();
    rep.results = json!({ "sizes": results });

    let mut human = String::from("detcov bench\n");
    human.push_str(&format!(
        "dims {}  seed {}  reps {}\n\n",
        super::dims_string(args.dims),
        args.seed,
        args.reps
    ));
    let mut table = Table::new(["n", "median_ms", "min_ms", "max_ms", "coverage"]);
    for r in &results {
        table.row([
            r.n.to_string(),
            format!("{:.3}", r.median_ms),
            format!("{:.3}", r.min_ms),
            format!("{:.3}", r.max_ms),
            args.output.num(r.coverage),
        ]);
    }
    human.push_str(&table.render());

    report::emit(&rep, human, &args.output)?;
    Ok(Outcome::Clean)
}
