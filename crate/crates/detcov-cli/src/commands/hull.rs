//! `detcov hull`: report each file's convex-hull share of the image.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use detcov::io::KeypointFormat;
use detcov::keypoint::ImageDims;
use detcov::metrics::convex_hull_ratio;
use serde::Serialize;
use serde_json::json;

use crate::Outcome;
use crate::report::{self, OutputOpts, RunReport, Stopwatch, Table};

#[derive(Debug, Args)]
pub struct HullArgs {
    /// Keypoint files to measure
    #[arg(required = true, value_name = "FILE")]
    pub files: Vec<PathBuf>,
    /// Size of the image the keypoints were detected on
    #[arg(long, value_parser = super::parse_dims, value_name = "WxH")]
    pub dims: ImageDims,
    /// Input file layout
    #[arg(long, default_value = "csv", value_parser = super::parse_format)]
    pub format: KeypointFormat,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Serialize)]
struct FileResult {
    file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<usize>,
    /// Hull area divided by image area; 0 for degenerate sets.
    #[serde(skip_serializing_if = "Option::is_none")]
    hull_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

pub fn run(args: HullArgs) -> anyhow::Result<Outcome> {
    let mut watch = Stopwatch::start();
    let mut results = Vec::new();
    let mut failed = 0usize;

    for path in &args.files {
        let t0 = Instant::now();
        let file = path.display().to_string();
        let result = match super::coverage::load_labelled(path, args.format) {
            Ok(set) => FileResult {
                file,
                points: Some(set.len()),
                hull_ratio: Some(convex_hull_ratio(&set, args.dims)),
                error: None,
            },
            Err(error) => {
                failed += 1;
                FileResult { file, points: None, hull_ratio: None, error: Some(error) }
            }
        };
        watch.record(result.file.clone(), report::elapsed_ms(t0));
        results.push(result);
    }

    let mut rep = RunReport::new(
        "hull",
        json!({
            "dims": super::dims_string(args.dims),
            "format": args.format.to_string(),
        }),
    );
    rep.inputs = args.files.iter().map(|p| p.display().to_string()).collect();
    rep.results = json!({ "files": results });
    rep.timing_ms = watch.finish(&args.output);

    let mut human = String::from("detcov hull\n");
    human.push_str(&format!(
        "dims {}  format {}\n\n",
        super::dims_string(args.dims),
        args.format
    ));
    let mut table = Table::new(["file", "points", "hull"]);
    for r in &results {
        table.row([
            match &r.error {
                Some(e) => format!("{} (ERROR: {e})", r.file),
                None => r.file.clone(),
            },
            r.points.map_or("-".into(), |n| n.to_string()),
            r.hull_ratio.map_or("-".into(), |h| args.output.num(h)),
        ]);
    }
    human.push_str(&table.render());
    report::timing_lines(&rep.timing_ms, &mut human);

    report::emit(&rep, human, &args.output)?;
    Ok(if failed > 0 { Outcome::Partial } else { Outcome::Clean })
}
