//! Report assembly and rendering shared by every subcommand.
//!
//! Reports carry the same information in two renderings. The JSON form
//! is versioned and always prints floats at full precision; the human
//! form uses four decimal places unless `--full-precision` is given.
//! With `--no-timing`, a report's bytes depend only on its inputs and
//! configuration, which is what the output-stability tests pin down.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde::Serialize;

/// Identifier of the JSON report layout. Bump when the shape changes.
pub const SCHEMA: &str = "detcov-report/1";

/// Output destination and style flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct OutputOpts {
    /// Emit a JSON report instead of human-readable tables
    #[arg(long)]
    pub json: bool,
    /// Write the report to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Print floats at full precision instead of four decimal places
    #[arg(long)]
    pub full_precision: bool,
    /// Leave wall-clock timings out of the report
    #[arg(long)]
    pub no_timing: bool,
}

impl OutputOpts {
    /// Formats a float for human tables.
    pub fn num(&self, value: f64) -> String {
        if self.full_precision {
            format!("{value}")
        } else {
            format!("{value:.4}")
        }
    }
}

/// Everything one command run reports.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    /// Echo of the flags the results depend on.
    pub config: serde_json::Value,
    /// The files or parameters the command consumed.
    pub inputs: Vec<String>,
    pub results: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<Timing>,
}

impl RunReport {
    pub fn new(command: &'static str, config: serde_json::Value) -> Self {
        RunReport {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            inputs: Vec::new(),
            results: serde_json::Value::Null,
            timing_ms: None,
        }
    }
}

/// Wall-clock measurements for one run, in milliseconds.
#[derive(Debug, Serialize)]
pub struct Timing {
    pub total: f64,
    /// Per processed item, in report order.
    pub items: Vec<ItemTiming>,
}

#[derive(Debug, Serialize)]
pub struct ItemTiming {
    pub item: String,
    pub ms: f64,
}

/// Collects per-item wall times while a command runs.
pub struct Stopwatch {
    started: Instant,
    items: Vec<ItemTiming>,
}

impl Stopwatch {
    pub fn start() -> Self {
        Stopwatch { started: Instant::now(), items: Vec::new() }
    }

    pub fn record(&mut self, item: impl Into<String>, ms: f64) {
        self.items.push(ItemTiming { item: item.into(), ms });
    }

    /// Total and per-item times, or `None` under `--no-timing`.
    pub fn finish(self, opts: &OutputOpts) -> Option<Timing> {
        if opts.no_timing {
            return None;
        }
        Some(Timing { total: elapsed_ms(self.started), items: self.items })
    }
}

pub fn elapsed_ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

/// Plain-text table with space-padded, left-aligned columns.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(String::len).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i < widths.len() {
                    widths[i] = widths[i].max(cell.len());
                } else {
                    widths.push(cell.len());
                }
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                if i + 1 < row.len() {
                    for _ in cell.len()..widths[i] {
                        line.push(' ');
                    }
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Prints or writes the report in the selected rendering.
pub fn emit(report: &RunReport, human: String, opts: &OutputOpts) -> anyhow::Result<()> {
    let text = if opts.json {
        let mut json = serde_json::to_string_pretty(report)?;
        json.push('\n');
        json
    } else {
        human
    };
    match &opts.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Appends a timing footer to a human report.
pub fn timing_lines(timing: &Option<Timing>, out: &mut String) {
    if let Some(timing) = timing {
        out.push_str(&format!("total {:.3} ms\n", timing.total));
    }
}
