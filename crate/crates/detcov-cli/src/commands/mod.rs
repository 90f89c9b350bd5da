//! Subcommand implementations and shared argument parsers.

pub mod bench;
pub mod coverage;
pub mod evaluate;
pub mod framework;
pub mod hull;
pub mod mcnemar;
pub mod mutual;
pub mod synth;

use std::path::{Path, PathBuf};

use detcov::io::KeypointFormat;
use detcov::keypoint::ImageDims;

/// Directory a manifest's relative paths resolve against.
pub fn manifest_dir(manifest: &Path) -> PathBuf {
    match manifest.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => dir.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Parses a `WIDTHxHEIGHT` pixel geometry argument.
pub fn parse_dims(s: &str) -> Result<ImageDims, String> {
    let Some((w, h)) = s.split_once(['x', 'X']) else {
        return Err(format!("expected WIDTHxHEIGHT, got {s:?}"));
    };
    let width: u32 = w.trim().parse().map_err(|_| format!("bad width {w:?}"))?;
    let height: u32 = h.trim().parse().map_err(|_| format!("bad height {h:?}"))?;
    ImageDims::new(width, height).map_err(|e| e.to_string())
}

pub fn parse_format(s: &str) -> Result<KeypointFormat, String> {
    s.parse()
}

/// Rejects merge radii the metric layer would refuse.
pub fn check_epsilon(epsilon: f64) -> anyhow::Result<()> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        anyhow::bail!("epsilon must be finite and non-negative, got {epsilon}");
    }
    Ok(())
}

/// Echoes image dimensions the way they are passed on the command line.
pub fn dims_string(dims: ImageDims) -> String {
    format!("{}x{}", dims.width(), dims.height())
}

/// Runs `work` on a rayon pool of the requested size; 0 keeps the
/// default pool with one thread per core.
pub fn with_workers<T: Send>(
    workers: usize,
    work: impl FnOnce() -> T + Send,
) -> anyhow::Result<T> {
    if workers == 0 {
        Ok(work())
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
        Ok(pool.install(work))
    }
}
