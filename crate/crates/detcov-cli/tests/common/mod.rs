//! Helpers for driving the compiled `detcov` binary.

use std::path::Path;
use std::process::Command;

/// Captured result of one binary invocation.
pub struct RunOut {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOut {
    /// Parses stdout as a JSON report.
    pub fn json(&self) -> serde_json::Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|err| panic!("stdout is not JSON ({err}):\n{}", self.stdout))
    }
}

/// Runs the binary with the given arguments and working directory.
pub fn detcov(dir: &Path, args: &[&str]) -> RunOut {
    let out = Command::new(env!("CARGO_BIN_EXE_detcov"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary should spawn");
    RunOut {
        code: out.status.code().expect("binary should exit normally"),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Writes a plain x,y CSV keypoint file.
pub fn write_points(path: &Path, points: &[(f64, f64)]) {
    let mut content = String::from("x,y\n");
    for (x, y) in points {
        content.push_str(&format!("{x},{y}\n"));
    }
    std::fs::write(path, content).expect("fixture file should write");
}
