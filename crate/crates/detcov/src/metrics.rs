//! Coverage scoring for keypoint sets.
//!
//! The coverage of a point set is a harmonic mean of harmonic means: for
//! each point, take the harmonic mean of its distances to every other
//! point, then take the harmonic mean of those per-point values. The result
//! is a length in pixels. Harmonic means are dominated by small terms, so a
//! handful of near-coincident points drags the score down sharply, which is
//! exactly the behaviour wanted from a spread measure: points heaped on one
//! texture patch should not score like points spread across the frame.
//!
//! Exactly coincident locations would contribute a zero distance and make
//! the mean collapse, so every entry point deduplicates locations first
//! (see [`canonicalize`]). All entry points are deterministic and
//! independent of input point order.
//!
//! [`mutual_coverage`] applies the same score to the merged output of
//! several detectors on one image, which is how the combination framework
//! in [`crate::framework`] judges whether two detectors complement each
//! other. [`convex_hull_ratio`] is a simpler spread baseline (fraction of
//! the image covered by the convex hull) useful as a contrast: it ignores
//! interior structure entirely, while coverage does not.

use crate::keypoint::{ImageDims, KeyPointSet, Point};
use thiserror::Error;

/// A coverage score in pixels. Larger means better spread.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coverage(pub(crate) f64);

impl Coverage {
    pub fn value(&self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Coverage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Why a coverage score could not be computed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    /// Coverage needs at least two distinct locations; `distinct` is how
    /// many the input had after deduplication.
    #[error("coverage needs at least 2 distinct point locations, found {distinct}")]
    InsufficientPoints { distinct: usize },
    /// Mutual coverage was asked to merge sets from different images.
    #[error("sets belong to different images: expected {expected:?}, found {found:?}")]
    ImageMismatch { expected: String, found: String },
    /// Mutual coverage was called with an empty list of sets.
    #[error("mutual coverage needs at least one input set")]
    NoSets,
}

fn location_key(p: Point) -> (u64, u64) {
    // Collapse -0.0 onto 0.0 so both spellings of zero share one key.
    let norm = |v: f64| if v == 0.0 { 0.0f64 } else { v }.to_bits();
    (norm(p.x), norm(p.y))
}

/// Removes points whose location already occurred earlier in the set.
///
/// The first occurrence survives with its scale and attributes; order is
/// preserved. Equality is exact coordinate equality (`-0.0` equals `0.0`).
pub fn canonicalize(set: &KeyPointSet) -> KeyPointSet {
    canonicalize_with_radius(set, 0.0)
}

/// Like [`canonicalize`], but also drops any point within `merge_radius`
/// pixels of an already kept point.
///
/// The scan is greedy in source order: a point is kept exactly when its
/// distance to every previously kept point exceeds `merge_radius`. With a
/// radius of `0.0` this reduces to exact-duplicate removal.
///
/// # Panics
///
/// Panics if `merge_radius` is negative or not finite.
pub fn canonicalize_with_radius(set: &KeyPointSet, merge_radius: f64) -> KeyPointSet {
    assert!(
        merge_radius >= 0.0 && merge_radius.is_finite(),
        "merge radius must be finite and non-negative, got {merge_radius}"
    );
    let mut out = KeyPointSet::new(set.detector.clone(), set.image_id.clone());
    if merge_radius == 0.0 {
        let mut seen = std::collections::HashSet::with_capacity(set.points.len());
        for kp in &set.points {
            if seen.insert(location_key(kp.location)) {
                out.points.push(kp.clone());
            }
        }
    } else {
        for kp in &set.points {
            let crowded = out
                .points
                .iter()
                .any(|kept| kept.location.distance(&kp.location) <= merge_radius);
            if !crowded {
                out.points.push(kp.clone());
            }
        }
    }
    out
}

/// Coverage of the distinct locations in `locations`.
///
/// Accumulates, for each point, the sum of reciprocal distances to all
/// other points; one pass over unordered pairs feeds both endpoints. The
/// per-point harmonic mean distance is `(n-1)` over that sum, and the
/// final score is the harmonic mean of those values, which simplifies to
/// `n / (total_reciprocal_sum / (n-1))`.
///
/// Locations are sorted internally so the result is bit-for-bit identical
/// under any reordering of the input.
fn coverage_of_locations(mut locations: Vec<Point>) -> Result<Coverage, MetricsError> {
    let n = locations.len();
    if n < 2 {
        return Err(MetricsError::InsufficientPoints { distinct: n });
    }
    locations.sort_unstable_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let mut recip = vec![0.0f64; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let inv = 1.0 / locations[i].distance(&locations[j]);
            recip[i] += inv;
            recip[j] += inv;
        }
    }
    let per_point_denominator: f64 = recip.iter().sum::<f64>() / (n as f64 - 1.0);
    Ok(Coverage(n as f64 / per_point_denominator))
}

/// Coverage score of one detector's output, in pixels.
///
/// Duplicate locations are removed first; at least two distinct locations
/// must remain. The score is positive, never exceeds the largest pairwise
/// distance, and does not depend on point order.
///
/// ```
/// use detcov::keypoint::KeyPointSet;
/// use detcov::metrics::coverage;
///
/// let line = KeyPointSet::from_xy("d", "i", &[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]);
/// assert_eq!(coverage(&line)?.value(), 1.2);
/// # Ok::<(), detcov::metrics::MetricsError>(())
/// ```
pub fn coverage(set: &KeyPointSet) -> Result<Coverage, MetricsError> {
    coverage_with_radius(set, 0.0)
}

/// Like [`coverage`], with a merge radius for near-duplicate removal.
///
/// # Panics
///
/// Panics if `merge_radius` is negative or not finite.
pub fn coverage_with_radius(
    set: &KeyPointSet,
    merge_radius: f64,
) -> Result<Coverage, MetricsError> {
    let canon = canonicalize_with_radius(set, merge_radius);
    coverage_of_locations(canon.points.iter().map(|kp| kp.location).collect())
}

/// Coverage of the merged output of several detectors on one image.
///
/// All sets must share one `image_id`; their points are concatenated,
/// deduplicated, and scored like a single set. The result is symmetric in
/// the order of `sets` and, with a single set, equals [`coverage`] of that
/// set. A high value for two detectors whose individual coverage is low
/// means they fire in complementary image regions.
pub fn mutual_coverage(sets: &[KeyPointSet]) -> Result<Coverage, MetricsError> {
    mutual_coverage_with_radius(sets, 0.0)
}

/// Like [`mutual_coverage`], with a merge radius for near-duplicate
/// removal across the merged points.
///
/// # Panics
///
/// Panics if `merge_radius` is negative or not finite.
pub fn mutual_coverage_with_radius(
    sets: &[KeyPointSet],
    merge_radius: f64,
) -> Result<Coverage, MetricsError> {
    let first = sets.first().ok_or(MetricsError::NoSets)?;
    let mut merged = KeyPointSet::new("union", first.image_id.clone());
    for set in sets {
        if set.image_id != first.image_id {
            return Err(MetricsError::ImageMismatch {
                expected: first.image_id.clone(),
                found: set.image_id.clone(),
            });
        }
        merged.points.extend(set.points.iter().cloned());
    }
    coverage_with_radius(&merged, merge_radius)
}

/// Fraction of the image area enclosed by the convex hull of the set.
///
/// Duplicates are removed first. Fewer than three distinct locations, or
/// an entirely collinear set, yields `0.0`. For points inside the image
/// the ratio lies in `[0, 1]`; points outside the image bounds can push it
/// above `1`.
///
/// Adding a point inside (or on the boundary of) the current hull leaves
/// the ratio bit-for-bit unchanged, which is why this is only a baseline:
/// it cannot see how points are distributed within the hull.
pub fn convex_hull_ratio(set: &KeyPointSet, dims: ImageDims) -> f64 {
    let canon = canonicalize(set);
    let locations: Vec<Point> = canon.points.iter().map(|kp| kp.location).collect();
    hull_area(locations) / dims.area()
}

/// Area of the convex hull via the monotone chain construction followed by
/// the shoelace formula. Degenerate inputs (fewer than 3 points, all
/// collinear) have zero area.
fn hull_area(mut points: Vec<Point>) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    points.sort_unstable_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));

    // Cross product of (a -> b) with (a -> c); positive for a left turn.
    let cross = |a: &Point, b: &Point, c: &Point| -> f64 {
        (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    };

    // Strict turns only: collinear boundary points are dropped, so a point
    // landing exactly on a hull edge never alters the vertex list.
    let half_chain = |iter: &mut dyn Iterator<Item = &Point>| -> Vec<Point> {
        let mut chain: Vec<Point> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && cross(&chain[chain.len() - 2], &chain[chain.len() - 1], p) <= 0.0
            {
                chain.pop();
            }
            chain.push(*p);
        }
        chain
    };

    let lower = half_chain(&mut points.iter());
    let upper = half_chain(&mut points.iter().rev());
    if lower.len() < 2 {
        return 0.0;
    }

    // Join the chains, dropping each chain's final point (the other
    // chain's starting point), then apply the shoelace formula.
    let mut hull: Vec<Point> = lower[..lower.len() - 1].to_vec();
    hull.extend_from_slice(&upper[..upper.len() - 1]);
    if hull.len() < 3 {
        return 0.0;
    }
    let mut twice_area = 0.0;
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        twice_area += a.x * b.y - b.x * a.y;
    }
    twice_area.abs() / 2.0
}
