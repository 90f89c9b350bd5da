//! `detcov evaluate`: batch-score a dataset and compare its detectors.
//!
//! Scores every detector on every manifest image, summarises each
//! detector with a mean and 95% confidence interval, and fills the
//! pairwise signed-z comparison matrix. Per-entry failures are collected
//! rather than aborting the batch; the run only counts as failed when no
//! entry could be scored at all.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use detcov::io;
use detcov::io::manifest::{DatasetEntry, Manifest, scan_dataset};
use detcov::metrics::coverage_with_radius;
use detcov::stats::{EvaluationRecord, build_mcnemar_counts, mcnemar_z, mean_ci};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::Outcome;
use crate::report::{self, OutputOpts, RunReport, Stopwatch, Table};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Dataset manifest file
    #[arg(long, value_name = "PATH")]
    pub manifest: PathBuf,
    /// Directory detector paths are relative to; defaults to the
    /// manifest's directory
    #[arg(long, value_name = "DIR")]
    pub root: Option<PathBuf>,
    /// Merge radius in pixels; points this close collapse into one
    #[arg(long, default_value_t = 0.0, value_name = "E")]
    pub epsilon: f64,
    /// Worker threads for scoring; 0 means one per core
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub workers: usize,
    /// Write every record as plot-ready CSV
    #[arg(long, value_name = "PATH")]
    pub records_csv: Option<PathBuf>,
    /// Write the signed-z comparison matrix as CSV
    #[arg(long, value_name = "PATH")]
    pub matrix_csv: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Serialize)]
struct EntryFailure {
    detector: String,
    image: String,
    error: String,
}

#[derive(Serialize)]
struct DetectorSummary {
    detector: String,
    images: usize,
    passes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ci_low: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ci_high: Option<f64>,
}

#[derive(Serialize)]
struct PairComparison {
    left: String,
    right: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<f64>,
    /// Positive when the left detector passed more discordant images.
    #[serde(skip_serializing_if = "Option::is_none")]
    signed_z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reliable: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    discordant: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

struct Scored {
    entry_ms: f64,
    result: Result<EvaluationRecord, EntryFailure>,
}

fn score_entry(entry: &DatasetEntry, manifest: &Manifest, epsilon: f64) -> Scored {
    let t0 = Instant::now();
    let fail = |error: String| EntryFailure {
        detector: entry.detector.clone(),
        image: entry.image_id.clone(),
        error,
    };
    let result = if !entry.present {
        Err(fail(format!("file not found: {}", entry.path.display())))
    } else {
        io::load_keypoint_file(&entry.path, entry.format, &entry.detector, &entry.image_id)
            .map_err(|e| fail(e.to_string()))
            .and_then(|set| {
                let dims = manifest
                    .dims_of(&entry.image_id)
                    .expect("scan entries only reference manifest images");
                coverage_with_radius(&set, epsilon)
                    .map(|score| EvaluationRecord::new(&entry.image_id, &entry.detector, score, dims))
                    .map_err(|e| fail(e.to_string()))
            })
    };
    Scored { entry_ms: report::elapsed_ms(t0), result }
}

fn records_csv(records: &[EvaluationRecord]) -> String {
    let mut out = String::from("detector,image,coverage,threshold,passed\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.detector, r.image_id, r.coverage, r.threshold, r.passed
        ));
    }
    out
}

/// Upper-triangle matrix of signed z scores; empty cells where the score
/// could not be computed.
fn matrix_csv(detectors: &[String], pairs: &[PairComparison]) -> String {
    let mut out = String::new();
    if detectors.len() < 2 {
        return out;
    }
    let cell = |left: &str, right: &str| -> String {
        pairs
            .iter()
            .find(|p| p.left == left && p.right == right)
            .and_then(|p| p.signed_z)
            .map(|z| z.to_string())
            .unwrap_or_default()
    };
    out.push_str("detector");
    for col in &detectors[1..] {
        out.push(',');
        out.push_str(col);
    }
    out.push('\n');
    for (i, row) in detectors[..detectors.len() - 1].iter().enumerate() {
        out.push_str(row);
        for (j, col) in detectors[1..].iter().enumerate() {
            out.push(',');
            if j + 1 > i {
                out.push_str(&cell(row, col));
            }
        }
        out.push('\n');
    }
    out
}

pub fn run(args: EvaluateArgs) -> anyhow::Result<Outcome> {
    super::check_epsilon(args.epsilon)?;
    let manifest = Manifest::load(&args.manifest)
        .map_err(|e| anyhow::anyhow!("{}: {e}", args.manifest.display()))?;
    let root = args.root.clone().unwrap_or_else(|| super::manifest_dir(&args.manifest));
    let entries = scan_dataset(&manifest, &root);

    let mut watch = Stopwatch::start();
    let scored: Vec<Scored> = super::with_workers(args.workers, || {
        entries.par_iter().map(|e| score_entry(e, &manifest, args.epsilon)).collect()
    })?;

    let mut records = Vec::new();
    let mut failures = Vec::new();
    for (entry, scored) in entries.iter().zip(scored) {
        watch.record(format!("{}/{}", entry.detector, entry.image_id), scored.entry_ms);
        match scored.result {
            Ok(record) => records.push(record),
            Err(failure) => failures.push(failure),
        }
    }

    let detector_names: Vec<String> = manifest.detectors.iter().map(|d| d.name.clone()).collect();

    let summaries: Vec<DetectorSummary> = detector_names
        .iter()
        .map(|name| {
            let values: Vec<f64> = records
                .iter()
                .filter(|r| &r.detector == name)
                .map(|r| r.coverage)
                .collect();
            let passes = records.iter().filter(|r| &r.detector == name && r.passed).count();
            let ci = mean_ci(&values, 0.95).ok();
            DetectorSummary {
                detector: name.clone(),
                images: values.len(),
                passes,
                mean: ci.map(|c| c.mean).or_else(|| {
                    (values.len() == 1).then(|| values[0])
                }),
                ci_low: ci.map(|c| c.low),
                ci_high: ci.map(|c| c.high),
            }
        })
        .collect();

    let mut pairs = Vec::new();
    for (i, left) in detector_names.iter().enumerate() {
        for right in &detector_names[i + 1..] {
            let left_records: Vec<EvaluationRecord> =
                records.iter().filter(|r| &r.detector == left).cloned().collect();
            let right_records: Vec<EvaluationRecord> =
                records.iter().filter(|r| &r.detector == right).cloned().collect();
            let outcome = build_mcnemar_counts(&left_records, &right_records)
                .and_then(|counts| mcnemar_z(&counts).map(|z| (counts, z)));
            pairs.push(match outcome {
                Ok((counts, z)) => PairComparison {
                    left: left.clone(),
                    right: right.clone(),
                    z: Some(z.z),
                    signed_z: Some(z.signed_z),
                    reliable: Some(z.reliable),
                    discordant: Some(counts.discordant()),
                    error: None,
                },
                Err(e) => PairComparison {
                    left: left.clone(),
                    right: right.clone(),
                    z: None,
                    signed_z: None,
                    reliable: None,
                    discordant: None,
                    error: Some(e.to_string()),
                },
            });
        }
    }

    if let Some(path) = &args.records_csv {
        std::fs::write(path, records_csv(&records))?;
    }
    if let Some(path) = &args.matrix_csv {
        std::fs::write(path, matrix_csv(&detector_names, &pairs))?;
    }

    let mut rep = RunReport::new(
        "evaluate",
        json!({
            "manifest": args.manifest.display().to_string(),
            "root": root.display().to_string(),
            "epsilon": args.epsilon,
            "confidence_level": 0.95,
        }),
    );
    rep.inputs = entries.iter().map(|e| e.path.display().to_string()).collect();
    rep.results = json!({
        "records": records,
        "failures": failures,
        "summary": summaries,
        "mcnemar_pairs": pairs,
    });
    rep.timing_ms = watch.finish(&args.output);

    let mut human = String::from("detcov evaluate\n");
    human.push_str(&format!(
        "manifest {}  root {}  epsilon {}\n\n",
        args.manifest.display(),
        root.display(),
        args.epsilon
    ));

    let mut rec_table = Table::new(["detector", "image", "coverage", "threshold", "verdict"]);
    for r in &records {
        rec_table.row([
            r.detector.clone(),
            r.image_id.clone(),
            args.output.num(r.coverage),
            args.output.num(r.threshold),
            if r.passed { "PASS".into() } else { "FAIL".into() },
        ]);
    }
    human.push_str(&rec_table.render());
    human.push('\n');

    let mut sum_table = Table::new(["detector", "images", "passes", "mean", "ci95_low", "ci95_high"]);
    for s in &summaries {
        sum_table.row([
            s.detector.clone(),
            s.images.to_string(),
            s.passes.to_string(),
            s.mean.map_or("-".into(), |v| args.output.num(v)),
            s.ci_low.map_or("-".into(), |v| args.output.num(v)),
            s.ci_high.map_or("-".into(), |v| args.output.num(v)),
        ]);
    }
    human.push_str(&sum_table.render());

    if detector_names.len() > 1 {
        human.push('\n');
        human.push_str("signed z, positive when the row detector is better\n");
        let mut header = vec!["detector".to_string()];
        header.extend(detector_names[1..].iter().cloned());
        let mut matrix_table = Table::new(header);
        let mut any_unreliable = false;
        for (i, row) in detector_names[..detector_names.len() - 1].iter().enumerate() {
            let mut cells = vec![row.clone()];
            for (j, col) in detector_names[1..].iter().enumerate() {
                if j + 1 <= i {
                    cells.push("-".into());
                    continue;
                }
                let pair = pairs.iter().find(|p| &p.left == row && &p.right == col);
                cells.push(match pair {
                    Some(p) => match (p.signed_z, p.reliable) {
                        (Some(z), Some(true)) => args.output.num(z),
                        (Some(z), _) => {
                            any_unreliable = true;
                            format!("{}*", args.output.num(z))
                        }
                        _ => "-".into(),
                    },
                    None => "-".into(),
                });
            }
            matrix_table.row(cells);
        }
        human.push_str(&matrix_table.render());
        if any_unreliable {
            human.push_str("* unreliable: discordant count below 30\n");
        }
    }

    if !failures.is_empty() {
        human.push('\n');
        human.push_str(&format!("{} entries failed:\n", failures.len()));
        for f in &failures {
            human.push_str(&format!("  {}/{}: {}\n", f.detector, f.image, f.error));
        }
    }
    report::timing_lines(&rep.timing_ms, &mut human);

    report::emit(&rep, human, &args.output)?;
    Ok(if records.is_empty() && !failures.is_empty() {
        Outcome::Partial
    } else {
        Outcome::Clean
    })
}
