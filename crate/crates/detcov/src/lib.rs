//! Spatial coverage analysis for keypoint detectors.
//!
//! A keypoint detector marks interest points on an image. Two detectors with
//! similar repeatability can still behave very differently in downstream
//! matching because one spreads its points across the frame while the other
//! piles them onto a few textured patches. This crate quantifies that
//! difference and builds on it:
//!
//! - [`metrics`] scores how well a point set covers its image. The score is a
//!   harmonic mean of per-point harmonic mean distances, expressed in pixels,
//!   so clumped points are penalised far more than an arithmetic mean would.
//!   It also measures the joint coverage of several detectors' output on the
//!   same image, and a convex hull area ratio for comparison.
//! - [`stats`] turns raw scores into judgements: an area/perimeter success
//!   threshold, paired success/failure counts, a McNemar-style z statistic,
//!   mean confidence intervals, and a correlation helper.
//! - [`io`] reads and writes the on-disk formats: keypoint CSV files, the
//!   affine-region ellipse format, and the TOML dataset manifest.
//! - [`synth`] generates uniform, clustered, and grid point patterns with a
//!   seeded, portable RNG, for calibration and testing.
//! - [`framework`] decides which detectors to combine on a pair of images,
//!   driven by a category knowledge base and the coverage threshold.
//!
//! # Quick start
//!
//! ```
//! use detcov::keypoint::{ImageDims, KeyPointSet};
//! use detcov::metrics::coverage;
//! use detcov::stats::area_perimeter_threshold;
//!
//! let dims = ImageDims::new(100, 100)?;
//! let set = KeyPointSet::from_xy("demo", "img-1", &[
//!     (25.0, 25.0), (75.0, 25.0), (25.0, 75.0), (75.0, 75.0),
//! ]);
//! let score = coverage(&set)?;
//! assert!(score.value() >= area_perimeter_threshold(dims));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod framework;
pub mod guide;
pub mod io;
pub mod keypoint;
pub mod metrics;
pub mod stats;
pub mod synth;

pub use keypoint::{ImageDims, KeyPoint, KeyPointSet, Point};
pub use metrics::Coverage;
