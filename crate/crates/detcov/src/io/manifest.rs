//! The TOML dataset manifest: which images, which detectors, which pairs.
//!
//! ```toml
//! # Global fallback dimensions, used by images without their own.
//! width = 1440
//! height = 956
//!
//! [[images]]
//! id = "campus-1"
//!
//! [[images]]
//! id = "lab-4"
//! width = 1080        # per-image override
//! height = 717
//!
//! [[detectors]]
//! name = "alpha"
//! dir = "alpha-out"           # relative to the manifest's dataset root
//! format = "csv"              # or "ellipse"
//! pattern = "{image}.kp.csv"  # optional, default "{image}.<format>"
//!
//! [[pairs]]
//! id = "campus"               # optional, defaults to "left+right"
//! left = "campus-1"
//! right = "lab-4"
//! ```
//!
//! Loading validates everything up front: every image must end up with
//! positive dimensions, ids must be unique, pairs must reference declared
//! images, and custom file patterns must contain the `{image}`
//! placeholder. [`scan_dataset`] then maps each detector/image
//! combination to a file path and records which files actually exist;
//! missing files are flagged, not fatal, so partially populated datasets
//! can still be processed.

use super::KeypointFormat;
use crate::keypoint::ImageDims;
use serde::Deserialize;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Why a manifest could not be loaded or validated.
#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read manifest: {0}")]
    Io(#[from] std::io::Error),
    #[error("manifest syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("manifest lists no images")]
    NoImages,
    #[error("image {id:?} has no dimensions and the manifest sets no global width/height")]
    MissingDims { id: String },
    #[error("image {id:?}: {source}")]
    InvalidDims {
        id: String,
        source: crate::keypoint::InvalidDims,
    },
    #[error("duplicate image id {id:?}")]
    DuplicateImage { id: String },
    #[error("duplicate detector name {name:?}")]
    DuplicateDetector { name: String },
    #[error("duplicate pair id {id:?}")]
    DuplicatePair { id: String },
    #[error("pair {pair:?} references unknown image {image:?}")]
    UnknownImage { pair: String, image: String },
    #[error("detector {detector:?}: pattern {pattern:?} does not contain the {{image}} placeholder")]
    BadPattern { detector: String, pattern: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    width: Option<u32>,
    height: Option<u32>,
    #[serde(default)]
    images: Vec<RawImage>,
    #[serde(default)]
    detectors: Vec<RawDetector>,
    #[serde(default)]
    pairs: Vec<RawPair>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawImage {
    id: String,
    width: Option<u32>,
    height: Option<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDetector {
    name: String,
    dir: String,
    format: KeypointFormat,
    pattern: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    id: Option<String>,
    left: String,
    right: String,
}

/// An image declared by the manifest, with dimensions resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestImage {
    pub id: String,
    pub dims: ImageDims,
}

/// A detector declared by the manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestDetector {
    pub name: String,
    /// Output directory, relative to the dataset root.
    pub dir: String,
    pub format: KeypointFormat,
    /// File name template containing the `{image}` placeholder.
    pub pattern: String,
}

impl ManifestDetector {
    /// File name for one image, with the placeholder substituted.
    pub fn file_name(&self, image_id: &str) -> String {
        self.pattern.replace("{image}", image_id)
    }
}

/// An image pair declared for combination runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestPair {
    pub id: String,
    pub left: String,
    pub right: String,
}

/// A fully validated dataset manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub images: Vec<ManifestImage>,
    pub detectors: Vec<ManifestDetector>,
    pub pairs: Vec<ManifestPair>,
}

impl Manifest {
    /// Parses and validates manifest TOML.
    pub fn from_toml(input: &str) -> Result<Self, ManifestError> {
        let raw: RawManifest = toml::from_str(input)?;
        if raw.images.is_empty() {
            return Err(ManifestError::NoImages);
        }

        let mut images = Vec::with_capacity(raw.images.len());
        let mut image_ids = BTreeSet::new();
        for image in &raw.images {
            if !image_ids.insert(image.id.clone()) {
                return Err(ManifestError::DuplicateImage { id: image.id.clone() });
            }
            let width = image.width.or(raw.width);
            let height = image.height.or(raw.height);
            let (Some(width), Some(height)) = (width, height) else {
                return Err(ManifestError::MissingDims { id: image.id.clone() });
            };
            let dims = ImageDims::new(width, height).map_err(|source| {
                ManifestError::InvalidDims { id: image.id.clone(), source }
            })?;
            images.push(ManifestImage { id: image.id.clone(), dims });
        }

        let mut detectors = Vec::with_capacity(raw.detectors.len());
        let mut detector_names = BTreeSet::new();
        for det in &raw.detectors {
            if !detector_names.insert(det.name.clone()) {
                return Err(ManifestError::DuplicateDetector { name: det.name.clone() });
            }
            let pattern = match &det.pattern {
                Some(p) => {
                    if !p.contains("{image}") {
                        return Err(ManifestError::BadPattern {
                            detector: det.name.clone(),
                            pattern: p.clone(),
                        });
                    }
                    p.clone()
                }
                None => format!("{{image}}.{}", det.format),
            };
            detectors.push(ManifestDetector {
                name: det.name.clone(),
                dir: det.dir.clone(),
                format: det.format,
                pattern,
            });
        }

        let mut pairs = Vec::with_capacity(raw.pairs.len());
        let mut pair_ids = BTreeSet::new();
        for pair in &raw.pairs {
            let id = pair
                .id
                .clone()
                .unwrap_or_else(|| format!("{}+{}", pair.left, pair.right));
            if !pair_ids.insert(id.clone()) {
                return Err(ManifestError::DuplicatePair { id });
            }
            for image in [&pair.left, &pair.right] {
                if !image_ids.contains(image) {
                    return Err(ManifestError::UnknownImage {
                        pair: id.clone(),
                        image: image.clone(),
                    });
                }
            }
            pairs.push(ManifestPair { id, left: pair.left.clone(), right: pair.right.clone() });
        }

        Ok(Manifest { images, detectors, pairs })
    }

    /// Reads and validates a manifest file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ManifestError> {
        Ok(Self::from_toml(&std::fs::read_to_string(path)?)?)
    }

    /// Dimensions of a declared image, if any.
    pub fn dims_of(&self, image_id: &str) -> Option<ImageDims> {
        self.images.iter().find(|i| i.id == image_id).map(|i| i.dims)
    }
}

/// One expected keypoint file in a dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetEntry {
    pub detector: String,
    pub image_id: String,
    pub format: KeypointFormat,
    pub path: PathBuf,
    /// `true` when the file exists on disk.
    pub present: bool,
}

/// Maps every detector/image combination in the manifest to its expected
/// file under `root` and records whether the file exists. Entry order is
/// deterministic: detectors in manifest order, images in manifest order
/// within each detector.
pub fn scan_dataset(manifest: &Manifest, root: impl AsRef<Path>) -> Vec<DatasetEntry> {
    let root = root.as_ref();
    let mut entries = Vec::with_capacity(manifest.detectors.len() * manifest.images.len());
    for det in &manifest.detectors {
        for image in &manifest.images {
            let path = root.join(&det.dir).join(det.file_name(&image.id));
            entries.push(DatasetEntry {
                detector: det.name.clone(),
                image_id: image.id.clone(),
                format: det.format,
                present: path.is_file(),
                path,
            });
        }
    }
    entries
}
