//! `detcov framework`: plan detector combinations for manifest pairs.
//!
//! Every manifest pair becomes a planning task over its two images. The
//! start detector must be declared in the manifest; other detectors are
//! picked up from disk on demand, and a missing or unparseable file
//! simply makes that detector unavailable for the affected image.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use detcov::framework::kb::KnowledgeBase;
use detcov::framework::{DetectorRegistry, FrameworkDecision, Task, decide, trace_csv};
use detcov::io;
use detcov::io::manifest::Manifest;
use detcov::keypoint::ImageDims;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::Outcome;
use crate::report::{self, OutputOpts, RunReport, Stopwatch, Table};

#[derive(Debug, Args)]
pub struct FrameworkArgs {
    /// Dataset manifest file; its pairs become the planning tasks
    #[arg(long, value_name = "PATH")]
    pub manifest: PathBuf,
    /// Detector that runs first on every image
    #[arg(long, value_name = "NAME")]
    pub start: String,
    /// Pairing knowledge file; omit for the built-in table
    #[arg(long, value_name = "PATH")]
    pub kb: Option<PathBuf>,
    /// Directory detector paths are relative to; defaults to the
    /// manifest's directory
    #[arg(long, value_name = "DIR")]
    pub root: Option<PathBuf>,
    /// Worker threads for planning; 0 means one per core
    #[arg(long, default_value_t = 0, value_name = "N")]
    pub workers: usize,
    /// Write the step-by-step measurement trace as CSV
    #[arg(long, value_name = "PATH")]
    pub trace_csv: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Serialize)]
struct TaskError {
    task: String,
    error: String,
}

pub fn run(args: FrameworkArgs) -> anyhow::Result<Outcome> {
    let manifest = Manifest::load(&args.manifest)
        .map_err(|e| anyhow::anyhow!("{}: {e}", args.manifest.display()))?;
    if manifest.pairs.is_empty() {
        anyhow::bail!("{}: manifest declares no pairs to plan", args.manifest.display());
    }
    if !manifest.detectors.iter().any(|d| d.name == args.start) {
        anyhow::bail!(
            "start detector {:?} is not declared in the manifest (declared: {})",
            args.start,
            manifest.detectors.iter().map(|d| d.name.as_str()).collect::<Vec<_>>().join(", ")
        );
    }
    let kb_owned;
    let kb: &KnowledgeBase = match &args.kb {
        Some(path) => {
            kb_owned = KnowledgeBase::load(path)
                .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
            &kb_owned
        }
        None => KnowledgeBase::builtin(),
    };
    let root = args.root.clone().unwrap_or_else(|| super::manifest_dir(&args.manifest));

    let mut registry = DetectorRegistry::new();
    for det in &manifest.detectors {
        let det = det.clone();
        let root = root.clone();
        let name = det.name.clone();
        registry.register(
            name.clone(),
            Box::new(move |image| {
                let path = root.join(&det.dir).join(det.file_name(image));
                io::load_keypoint_file(path, det.format, name.clone(), image).ok()
            }),
        )?;
    }

    let dims: BTreeMap<String, ImageDims> =
        manifest.images.iter().map(|i| (i.id.clone(), i.dims)).collect();
    let tasks: Vec<Task> = manifest
        .pairs
        .iter()
        .map(|p| Task::new(p.id.clone(), [p.left.clone(), p.right.clone()]))
        .collect();

    let mut watch = Stopwatch::start();
    let planned: Vec<(f64, Result<FrameworkDecision, String>)> =
        super::with_workers(args.workers, || {
            tasks
                .par_iter()
                .map(|task| {
                    let t0 = Instant::now();
                    let result = decide(task, &args.start, &registry, kb, &dims)
                        .map_err(|e| e.to_string());
                    (report::elapsed_ms(t0), result)
                })
                .collect()
        })?;

    let mut decisions = Vec::new();
    let mut errors = Vec::new();
    for (task, (ms, result)) in tasks.iter().zip(planned) {
        watch.record(task.id.clone(), ms);
        match result {
            Ok(decision) => decisions.push(decision),
            Err(error) => errors.push(TaskError { task: task.id.clone(), error }),
        }
    }

    if let Some(path) = &args.trace_csv {
        std::fs::write(path, trace_csv(&decisions))?;
    }

    let mut rep = RunReport::new(
        "framework",
        json!({
            "manifest": args.manifest.display().to_string(),
            "root": root.display().to_string(),
            "start": args.start,
            "kb": args.kb.as_ref().map(|p| p.display().to_string()),
        }),
    );
    rep.inputs = vec![args.manifest.display().to_string()];
    rep.results = json!({ "decisions": decisions, "errors": errors });
    rep.timing_ms = watch.finish(&args.output);

    let mut human = String::from("detcov framework\n");
    human.push_str(&format!(
        "manifest {}  start {}  kb {}\n\n",
        args.manifest.display(),
        args.start,
        args.kb.as_ref().map_or("builtin".into(), |p| p.display().to_string())
    ));
    let mut table = Table::new(["pair", "mode", "detectors", "fallback", "steps"]);
    for d in &decisions {
        table.row([
            d.task_id.clone(),
            d.mode.to_string(),
            d.detectors.join("+"),
            if d.fallback { "yes".into() } else { "no".into() },
            d.trace.len().to_string(),
        ]);
    }
    human.push_str(&table.render());
    if !errors.is_empty() {
        human.push('\n');
        human.push_str(&format!("{} tasks failed:\n", errors.len()));
        for e in &errors {
            human.push_str(&format!("  {}: {}\n", e.task, e.error));
        }
    }
    report::timing_lines(&rep.timing_ms, &mut human);

    report::emit(&rep, human, &args.output)?;
    Ok(if decisions.is_empty() && !errors.is_empty() {
        Outcome::Partial
    } else {
        Outcome::Clean
    })
}
