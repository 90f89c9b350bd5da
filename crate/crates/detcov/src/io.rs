//! Reading and writing the on-disk formats.
//!
//! Three formats are supported:
//!
//! - **Keypoint CSV** (`x,y[,scale[,extra...]]` per line, optional header):
//!   the native interchange format, written by [`write_csv`] and read by
//!   [`parse_keypoints`] with [`KeypointFormat::Csv`].
//! - **Ellipse regions** ([`KeypointFormat::Ellipse`]): the widely shared
//!   affine-region text layout, a scale-factor line, a count line, then one
//!   `x y a b c` line per region. The three shape parameters are kept as
//!   opaque point attributes.
//! - **Dataset manifest** ([`manifest::Manifest`]): a TOML file naming the
//!   images, their pixel dimensions, the detectors with their output
//!   directories, and optional image pairs for combination runs.
//!
//! Parsers report precise line numbers and collect every malformed row
//! instead of stopping at the first, so one pass over a bad file shows all
//! of its problems.

pub mod manifest;

mod csv;
mod ellipse;

use crate::keypoint::{KeyPoint, KeyPointSet};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// On-disk layout of a keypoint file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeypointFormat {
    Csv,
    Ellipse,
}

impl std::fmt::Display for KeypointFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            KeypointFormat::Csv => "csv",
            KeypointFormat::Ellipse => "ellipse",
        })
    }
}

impl std::str::FromStr for KeypointFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(KeypointFormat::Csv),
            "ellipse" => Ok(KeypointFormat::Ellipse),
            other => Err(format!("unknown keypoint format {other:?}, expected csv or ellipse")),
        }
    }
}

/// One malformed data line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct RowError {
    /// 1-based line number in the source file.
    pub line: usize,
    pub message: String,
}

/// Why a keypoint file could not be parsed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    /// The file contained nothing at all (not even a header); distinct
    /// from a well-formed file that declares zero points.
    #[error("file is empty")]
    EmptyFile,
    /// A structural line (header, scale factor, count) is unusable.
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
    /// An ellipse file declared one region count but carried another.
    #[error("header declares {declared} regions but the file has {found} data lines")]
    CountMismatch { declared: usize, found: usize },
    /// One or more data lines were malformed; every bad line is listed.
    #[error("{} malformed line(s), first at line {}: {}", rows.len(), rows[0].line, rows[0].message)]
    Malformed {
        /// Non-empty, in file order.
        rows: Vec<RowError>,
    },
}

/// Parses keypoint file content in the given format.
///
/// Returns the points in file order, duplicates included; deduplication is
/// the metric layer's job. The caller provides detector and image identity
/// separately (see [`load_keypoint_file`]).
pub fn parse_keypoints(input: &str, format: KeypointFormat) -> Result<Vec<KeyPoint>, ParseError> {
    match format {
        KeypointFormat::Csv => csv::parse(input),
        KeypointFormat::Ellipse => ellipse::parse(input),
    }
}

/// Serialises a set to keypoint CSV.
///
/// Always emits a header line, so even an empty set round-trips through
/// [`parse_keypoints`]. Coordinates and scales are printed with Rust's
/// shortest round-trip float formatting, so parsing the output recovers
/// bit-identical values. Attribute strings are written verbatim and must
/// not contain commas or line breaks.
pub fn write_csv(set: &KeyPointSet) -> String {
    csv::write(set)
}

/// A keypoint file that could not be loaded.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: ParseError,
    },
}

/// Reads and parses one keypoint file, stamping the resulting set with the
/// detector name and image id it belongs to.
pub fn load_keypoint_file(
    path: impl AsRef<Path>,
    format: KeypointFormat,
    detector: impl Into<String>,
    image_id: impl Into<String>,
) -> Result<KeyPointSet, LoadError> {
    let path = path.as_ref();
    let content = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let points = parse_keypoints(&content, format).map_err(|source| LoadError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    let mut set = KeyPointSet::new(detector, image_id);
    set.points = points;
    Ok(set)
}
