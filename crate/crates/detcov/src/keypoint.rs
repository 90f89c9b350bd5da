//! Core data types: pixel points, keypoints, detector output sets, image
//! dimensions.
//!
//! Coordinates are continuous pixel positions in image space: `x` grows to
//! the right, `y` grows downward, and the image spans `[0, width) x [0,
//! height)`. Keypoints may carry an optional characteristic scale and opaque
//! extra attributes preserved from the source file.

use thiserror::Error;

/// A position in continuous pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Euclidean distance to `other`, in pixels.
    pub fn distance(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }

    /// `true` if both coordinates are equal, treating `-0.0` as `0.0`.
    pub fn same_location(&self, other: &Point) -> bool {
        self.x == other.x && self.y == other.y
    }
}

/// A single detected interest point.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyPoint {
    pub location: Point,
    /// Characteristic scale in pixels. `None` when the detector or file did
    /// not provide one. Must be finite and strictly positive when present.
    pub scale: Option<f64>,
    /// Extra per-point fields carried through from the source file, in file
    /// order. Not interpreted by any metric.
    pub attributes: Vec<String>,
}

impl KeyPoint {
    pub fn new(x: f64, y: f64) -> Self {
        KeyPoint {
            location: Point::new(x, y),
            scale: None,
            attributes: Vec::new(),
        }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = Some(scale);
        self
    }
}

/// The output of one detector on one image.
///
/// `points` preserves source order and may contain duplicate locations;
/// metrics deduplicate internally. An empty set is valid (a detector that
/// fired on nothing).
#[derive(Debug, Clone, PartialEq)]
pub struct KeyPointSet {
    /// Name of the detector that produced the set.
    pub detector: String,
    /// Identifier of the image the detector ran on.
    pub image_id: String,
    pub points: Vec<KeyPoint>,
}

impl KeyPointSet {
    pub fn new(detector: impl Into<String>, image_id: impl Into<String>) -> Self {
        KeyPointSet {
            detector: detector.into(),
            image_id: image_id.into(),
            points: Vec::new(),
        }
    }

    /// Builds a set from bare coordinates, without scales or attributes.
    pub fn from_xy(
        detector: impl Into<String>,
        image_id: impl Into<String>,
        coords: &[(f64, f64)],
    ) -> Self {
        KeyPointSet {
            detector: detector.into(),
            image_id: image_id.into(),
            points: coords.iter().map(|&(x, y)| KeyPoint::new(x, y)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Width and height of an image in whole pixels, each at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageDims {
    width: u32,
    height: u32,
}

/// Rejected image dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("image dimensions must be at least 1x1, got {width}x{height}")]
pub struct InvalidDims {
    pub width: u32,
    pub height: u32,
}

impl ImageDims {
    pub fn new(width: u32, height: u32) -> Result<Self, InvalidDims> {
        if width == 0 || height == 0 {
            return Err(InvalidDims { width, height });
        }
        Ok(ImageDims { width, height })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Image area in square pixels.
    pub fn area(&self) -> f64 {
        f64::from(self.width) * f64::from(self.height)
    }

    /// Perimeter of the image rectangle in pixels.
    pub fn perimeter(&self) -> f64 {
        2.0 * (f64::from(self.width) + f64::from(self.height))
    }
}

impl std::fmt::Display for ImageDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}
