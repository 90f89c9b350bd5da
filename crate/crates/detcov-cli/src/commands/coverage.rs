//! `detcov coverage`: score how widely each file's keypoints spread.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use detcov::io::{self, KeypointFormat};
use detcov::keypoint::{ImageDims, KeyPointSet};
use detcov::metrics::{convex_hull_ratio, coverage_with_radius};
use detcov::stats::area_perimeter_threshold;
use serde::Serialize;
use serde_json::json;

use crate::Outcome;
use crate::report::{self, OutputOpts, RunReport, Stopwatch, Table};

#[derive(Debug, Args)]
pub struct CoverageArgs {
    /// Keypoint files to score
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
    /// Also report each file's convex-hull share of the image area
    #[arg(long)]
    pub hull: bool,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Serialize)]
struct FileResult {
    file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage: Option<f64>,
    threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hull_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Loads one file and stamps it with its stem as detector and image id.
pub fn load_labelled(path: &Path, format: KeypointFormat) -> Result<KeyPointSet, String> {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    io::load_keypoint_file(path, format, stem.clone(), stem).map_err(|e| e.to_string())
}

pub fn run(args: CoverageArgs) -> anyhow::Result<Outcome> {
    super::check_epsilon(args.epsilon)?;
    let threshold = area_perimeter_threshold(args.dims);
    let mut watch = Stopwatch::start();
    let mut results = Vec::new();
    let mut failed = 0usize;

    for path in &args.files {
        let t0 = Instant::now();
        let file = path.display().to_string();
        let scored = load_labelled(path, args.format).and_then(|set| {
            let points = set.len();
            let hull_ratio = args.hull.then(|| convex_hull_ratio(&set, args.dims));
            match coverage_with_radius(&set, args.epsilon) {
                Ok(c) => Ok((points, Some(c.value()), hull_ratio, None)),
                Err(e) => Ok((points, None, hull_ratio, Some(e.to_string()))),
            }
        });
        let result = match scored {
            Ok((points, coverage, hull_ratio, error)) => FileResult {
                file,
                points: Some(points),
                coverage,
                threshold,
                passed: coverage.map(|c| c >= threshold),
                hull_ratio,
                error,
            },
            Err(error) => FileResult {
                file,
                points: None,
                coverage: None,
                threshold,
                passed: None,
                hull_ratio: None,
                error: Some(error),
            },
        };
        if result.error.is_some() {
            failed += 1;
        }
        watch.record(result.file.clone(), report::elapsed_ms(t0));
        results.push(result);
    }

    let mut rep = RunReport::new(
        "coverage",
        json!({
            "dims": super::dims_string(args.dims),
            "format": args.format.to_string(),
            "epsilon": args.epsilon,
            "hull": args.hull,
        }),
    );
    rep.inputs = args.files.iter().map(|p| p.display().to_string()).collect();
    rep.results = json!({ "files": results });
    rep.timing_ms = watch.finish(&args.output);

    let mut human = String::from("detcov coverage\n");
    human.push_str(&format!(
        "dims {}  format {}  epsilon {}\n\n",
        super::dims_string(args.dims),
        args.format,
        args.epsilon
    ));
    let mut header = vec!["file", "points", "coverage", "threshold", "verdict"];
    if args.hull {
        header.push("hull");
    }
    let mut table = Table::new(header);
    for r in &results {
        let mut cells = vec![
            r.file.clone(),
            r.points.map_or("-".into(), |n| n.to_string()),
            r.coverage.map_or("-".into(), |c| args.output.num(c)),
            args.output.num(r.threshold),
            match (&r.error, r.passed) {
                (Some(e), _) => format!("ERROR: {e}"),
                (None, Some(true)) => "PASS".into(),
                (None, Some(false)) => "FAIL".into(),
                (None, None) => "-".into(),
            },
        ];
        if args.hull {
            cells.push(r.hull_ratio.map_or("-".into(), |h| args.output.num(h)));
        }
        table.row(cells);
    }
    human.push_str(&table.render());
    report::timing_lines(&rep.timing_ms, &mut human);

    report::emit(&rep, human, &args.output)?;
    Ok(if failed > 0 { Outcome::Partial } else { Outcome::Clean })
}
