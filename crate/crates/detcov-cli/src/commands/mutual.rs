//! `detcov mutual`: score the merged keypoints of several detectors on
//! one image.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use detcov::io::KeypointFormat;
use detcov::keypoint::ImageDims;
use detcov::metrics::{coverage_with_radius, mutual_coverage_with_radius};
use detcov::stats::area_perimeter_threshold;
use serde::Serialize;
use serde_json::json;

use crate::Outcome;
use crate::report::{self, OutputOpts, RunReport, Stopwatch, Table};

#[derive(Debug, Args)]
pub struct MutualArgs {
    /// One keypoint file per detector, all from the same image
    #[arg(required = true, value_name = "FILE")]
    pub files: Vec<PathBuf>,
    /// Size of the image the keypoints were detected on
    #[arg(long, value_parser = super::parse_dims, value_name = "WxH")]
    pub dims: ImageDims,
    /// Input file layout
    #[arg(long, default_value = "csv", value_parser = super::parse_format)]
    pub format: KeypointFormat,
    /// Merge radius in pixels; points this close collapse into one
    #[arg(long, default_value_t = 0.0, value_name = "E")]
    pub epsilon: f64,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Serialize)]
struct SetResult {
    file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    /// Coverage of this file alone; absent when undefined.
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn run(args: MutualArgs) -> anyhow::Result<Outcome> {
    super::check_epsilon(args.epsilon)?;
    let threshold = area_perimeter_threshold(args.dims);
    let mut watch = Stopwatch::start();
    let mut per_set = Vec::new();
    let mut sets = Vec::new();
    let mut failed = 0usize;

    for path in &args.files {
        let t0 = Instant::now();
        let file = path.display().to_string();
        match super::coverage::load_labelled(path, args.format) {
            Ok(mut set) => {
                // The merge requires one shared image id; files stand for
                // detectors here, not images.
                set.image_id = "image".into();
                per_set.push(SetResult {
                    file,
                    points: Some(set.len()),
                    coverage: coverage_with_radius(&set, args.epsilon).ok().map(|c| c.value()),
                    error: None,
                });
                sets.push(set);
            }
            Err(error) => {
                failed += 1;
                per_set.push(SetResult {
                    file,
                    points: None,
                    coverage: None,
                    error: Some(error),
                });
            }
        }
        watch.record(path.display().to_string(), report::elapsed_ms(t0));
    }

    // The union is only meaningful when every contributing file loaded.
    let union = if failed == 0 {
        mutual_coverage_with_radius(&sets, args.epsilon)
            .map(|c| c.value())
            .map_err(|e| e.to_string())
    } else {
        Err("not computed: some inputs failed to load".to_string())
    };
    if union.is_err() {
        failed += 1;
    }

    let mut rep = RunReport::new(
        "mutual",
        json!({
            "dims": super::dims_string(args.dims),
            "format": args.format.to_string(),
            "epsilon": args.epsilon,
        }),
    );
    rep.inputs = args.files.iter().map(|p| p.display().to_string()).collect();
    rep.results = match &union {
        Ok(value) => json!({
            "sets": per_set,
            "mutual": { "coverage": value, "threshold": threshold, "passed": *value >= threshold },
        }),
        Err(error) => json!({
            "sets": per_set,
            "mutual": { "error": error, "threshold": threshold },
        }),
    };
    rep.timing_ms = watch.finish(&args.output);

    let mut human = String::from("detcov mutual\n");
    human.push_str(&format!(
        "dims {}  format {}  epsilon {}\n\n",
        super::dims_string(args.dims),
        args.format,
        args.epsilon
    ));
    let mut table = Table::new(["file", "points", "coverage"]);
    for r in &per_set {
        table.row([
            match &r.error {
                Some(e) => format!("{} (ERROR: {e})", r.file),
                None => r.file.clone(),
            },
            r.points.map_or("-".into(), |n| n.to_string()),
            r.coverage.map_or("-".into(), |c| args.output.num(c)),
        ]);
    }
    human.push_str(&table.render());
    human.push('\n');
    match &union {
        Ok(value) => human.push_str(&format!(
            "mutual coverage {}  threshold {}  {}\n",
            args.output.num(*value),
            args.output.num(threshold),
            if *value >= threshold { "PASS" } else { "FAIL" }
        )),
        Err(error) => human.push_str(&format!("mutual coverage ERROR: {error}\n")),
    }
    report::timing_lines(&rep.timing_ms, &mut human);

    report::emit(&rep, human, &args.output)?;
    Ok(if failed > 0 { Outcome::Partial } else { Outcome::Clean })
}
