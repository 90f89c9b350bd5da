//! Success criteria and statistical comparison of detectors.
//!
//! A coverage score on its own says little; these helpers turn scores into
//! judgements and detector-versus-detector comparisons:
//!
//! - [`area_perimeter_threshold`] gives the pass bar for an image size. A
//!   set whose coverage reaches `area / perimeter` of the image is spread
//!   widely enough to call the detector successful on that image.
//! - [`EvaluationRecord`] stores one detector-on-image outcome.
//! - [`build_mcnemar_counts`] pairs two detectors' records image by image
//!   and tallies the success/failure contingency counts; [`mcnemar_z`]
//!   turns the discordant counts into a z statistic for the hypothesis
//!   that both detectors fail equally often.
//! - [`mean_ci`] and [`pearson_r`] are small helpers for summarising score
//!   collections.
//!
//! ```
//! use detcov::stats::{mcnemar_z, McNemarCounts};
//!
//! // Detector A succeeded on 174 images where B failed; B succeeded on 1
//! // image where A failed. The discordant split is wildly asymmetric, so
//! // the z statistic is far beyond any conventional significance bar.
//! let counts = McNemarCounts { n_ss: 20, n_sf: 174, n_fs: 1, n_ff: 5 };
//! let result = mcnemar_z(&counts)?;
//! assert!((result.z - 13.0).abs() < 0.05);
//! assert!(result.signed_z > 0.0); // positive: the first detector is better
//! assert!(result.reliable);
//! # Ok::<(), detcov::stats::StatsError>(())
//! ```

use crate::keypoint::ImageDims;
use crate::metrics::Coverage;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};
use std::collections::BTreeMap;
use thiserror::Error;

/// How a statistical helper's input fell short.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    /// No discordant pairs: the z statistic is undefined when both
    /// detectors agreed on every image.
    #[error("no discordant pairs to compare")]
    DegenerateCounts,
    /// Too few values for the requested computation.
    #[error("need at least {needed} values, found {found}")]
    InsufficientData { needed: usize, found: usize },
    /// Record lists do not pair up one-to-one by image.
    #[error("record lists do not pair up by image: {detail}")]
    DatasetMismatch { detail: String },
    /// Series lengths differ.
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    /// A constant series has no defined correlation.
    #[error("series is constant, correlation undefined")]
    DegenerateInput,
    /// Confidence level outside the open interval (0, 1).
    #[error("confidence level must lie strictly between 0 and 1, got {level}")]
    InvalidLevel { level: f64 },
}

/// Minimum coverage, in pixels, for a detector to count as successful on
/// an image of the given size: image area divided by image perimeter.
///
/// ```
/// use detcov::keypoint::ImageDims;
/// use detcov::stats::area_perimeter_threshold;
///
/// let dims = ImageDims::new(900, 600)?;
/// assert_eq!(area_perimeter_threshold(dims), 180.0);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn area_perimeter_threshold(dims: ImageDims) -> f64 {
    dims.area() / dims.perimeter()
}

/// `true` when the score meets the area/perimeter bar for `dims`.
/// Exactly reaching the threshold counts as a pass.
pub fn evaluate_criterion(score: Coverage, dims: ImageDims) -> bool {
    score.value() >= area_perimeter_threshold(dims)
}

/// Outcome of running one detector on one image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationRecord {
    pub image_id: String,
    pub detector: String,
    /// Coverage score in pixels.
    pub coverage: f64,
    /// Pass bar the score was judged against, in pixels.
    pub threshold: f64,
    /// `coverage >= threshold`.
    pub passed: bool,
}

impl EvaluationRecord {
    pub fn new(
        image_id: impl Into<String>,
        detector: impl Into<String>,
        score: Coverage,
        dims: ImageDims,
    ) -> Self {
        let threshold = area_perimeter_threshold(dims);
        EvaluationRecord {
            image_id: image_id.into(),
            detector: detector.into(),
            coverage: score.value(),
            threshold,
            passed: score.value() >= threshold,
        }
    }
}

/// Paired success/failure tallies for two detectors over one image list.
///
/// The first index letter refers to the left detector, the second to the
/// right: `n_sf` counts images where the left succeeded and the right
/// failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct McNemarCounts {
    pub n_ss: u32,
    pub n_sf: u32,
    pub n_fs: u32,
    pub n_ff: u32,
}

impl McNemarCounts {
    /// Images where exactly one of the two detectors succeeded.
    pub fn discordant(&self) -> u32 {
        self.n_sf + self.n_fs
    }

    /// Total paired images.
    pub fn total(&self) -> u32 {
        self.n_ss + self.n_sf + self.n_fs + self.n_ff
    }
}

/// Pairs two record lists by `image_id` and tallies the contingency
/// counts, left list first.
///
/// Both lists must mention exactly the same images, each once.
pub fn build_mcnemar_counts(
    left: &[EvaluationRecord],
    right: &[EvaluationRecord],
) -> Result<McNemarCounts, StatsError> {
    let index = |records: &[EvaluationRecord]| -> Result<BTreeMap<String, bool>, StatsError> {
        let mut map = BTreeMap::new();
        for r in records {
            if map.insert(r.image_id.clone(), r.passed).is_some() {
                return Err(StatsError::DatasetMismatch {
                    detail: format!("image {:?} appears more than once", r.image_id),
                });
            }
        }
        Ok(map)
    };
    let left_by_image = index(left)?;
    let right_by_image = index(right)?;
    if left_by_image.len() != right_by_image.len() {
        return Err(StatsError::DatasetMismatch {
            detail: format!(
                "left covers {} images, right covers {}",
                left_by_image.len(),
                right_by_image.len()
            ),
        });
    }
    let mut counts = McNemarCounts { n_ss: 0, n_sf: 0, n_fs: 0, n_ff: 0 };
    for (image, &left_passed) in &left_by_image {
        let Some(&right_passed) = right_by_image.get(image) else {
            return Err(StatsError::DatasetMismatch {
                detail: format!("image {image:?} missing from the right list"),
            });
        };
        match (left_passed, right_passed) {
            (true, true) => counts.n_ss += 1,
            (true, false) => counts.n_sf += 1,
            (false, true) => counts.n_fs += 1,
            (false, false) => counts.n_ff += 1,
        }
    }
    Ok(counts)
}

/// McNemar z statistic with a continuity correction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McNemarResult {
    /// `max(0, (|n_sf - n_fs| - 1) / sqrt(n_sf + n_fs))`.
    pub z: f64,
    /// `z` carrying the sign of `n_sf - n_fs`: positive when the left
    /// detector won more discordant images.
    pub signed_z: f64,
    /// `true` when the discordant count reaches 30, the usual bar for
    /// trusting the normal approximation.
    pub reliable: bool,
}

/// Computes the z statistic for the discordant counts.
///
/// Returns [`StatsError::DegenerateCounts`] when there are no discordant
/// images at all. The continuity correction can push the raw value below
/// zero for near-balanced counts; it is clamped to zero, since a balanced
/// split is simply no evidence of a difference.
pub fn mcnemar_z(counts: &McNemarCounts) -> Result<McNemarResult, StatsError> {
    let discordant = counts.discordant();
    if discordant == 0 {
        return Err(StatsError::DegenerateCounts);
    }
    let diff = f64::from(counts.n_sf) - f64::from(counts.n_fs);
    let z = ((diff.abs() - 1.0) / f64::from(discordant).sqrt()).max(0.0);
    let signed_z = if diff < 0.0 { -z } else { z };
    Ok(McNemarResult { z, signed_z, reliable: discordant >= 30 })
}

/// Sample mean with a normal-approximation confidence interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfidenceInterval {
    pub mean: f64,
    pub low: f64,
    pub high: f64,
    /// The confidence level the bounds were computed for.
    pub level: f64,
}

/// Mean of `values` with a symmetric normal-approximation interval at the
/// given confidence level (e.g. `0.95`).
///
/// Uses the sample standard deviation, so at least two values are needed.
/// A constant series yields a zero-width interval.
///
/// ```
/// use detcov::stats::mean_ci;
///
/// let ci = mean_ci(&[0.0, 10.0], 0.95)?;
/// assert!((ci.low - -4.80).abs() < 0.01);
/// assert!((ci.high - 14.80).abs() < 0.01);
/// # Ok::<(), detcov::stats::StatsError>(())
/// ```
pub fn mean_ci(values: &[f64], level: f64) -> Result<ConfidenceInterval, StatsError> {
    if !(level > 0.0 && level < 1.0) {
        return Err(StatsError::InvalidLevel { level });
    }
    let n = values.len();
    if n < 2 {
        return Err(StatsError::InsufficientData { needed: 2, found: n });
    }
    let n_f = n as f64;
    let mean = values.iter().sum::<f64>() / n_f;
    let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n_f - 1.0);
    let standard_normal = Normal::new(0.0, 1.0).expect("unit normal parameters are valid");
    let quantile = standard_normal.inverse_cdf(0.5 + level / 2.0);
    let half_width = quantile * variance.sqrt() / n_f.sqrt();
    Ok(ConfidenceInterval { mean, low: mean - half_width, high: mean + half_width, level })
}

/// Sample Pearson correlation between two equally long series.
///
/// Both series must contain at least two values and must not be constant.
/// The result is clamped into `[-1, 1]` to absorb rounding.
pub fn pearson_r(xs: &[f64], ys: &[f64]) -> Result<f64, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch { left: xs.len(), right: ys.len() });
    }
    let n = xs.len();
    if n < 2 {
        return Err(StatsError::InsufficientData { needed: 2, found: n });
    }
    let n_f = n as f64;
    let mean_x = xs.iter().sum::<f64>() / n_f;
    let mean_y = ys.iter().sum::<f64>() / n_f;
    let mut xy = 0.0;
    let mut xx = 0.0;
    let mut yy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        xy += dx * dy;
        xx += dx * dx;
        yy += dy * dy;
    }
    if xx == 0.0 || yy == 0.0 {
        return Err(StatsError::DegenerateInput);
    }
    Ok((xy / (xx * yy).sqrt()).clamp(-1.0, 1.0))
}
