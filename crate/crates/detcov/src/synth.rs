//! Seeded synthetic point patterns for calibration and testing.
//!
//! Three layouts with known coverage behaviour:
//!
//! - [`uniform`]: independent uniform draws over the whole image. The
//!   natural "well spread" reference.
//! - [`clustered`]: points heaped around a few random centres with
//!   Gaussian scatter. The natural "badly spread" reference; its coverage
//!   collapses as the scatter shrinks.
//! - [`grid`]: deterministic cell centres, the most even layout possible
//!   at a given count.
//!
//! The random generators draw from a ChaCha8 stream seeded with the given
//! `u64`, so a seed fully determines the output, bit for bit, on every
//! platform. Draw order is part of the contract: `uniform` draws `x` then
//! `y` per point; `clustered` draws all centres first (`x` then `y`
//! each), then per point a Gaussian `x` offset and a Gaussian `y` offset,
//! assigning points to centres round-robin.

use crate::keypoint::{ImageDims, KeyPointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Largest representable coordinate strictly below the image extent, so
/// generated points stay in the half-open interval `[0, extent)`.
fn max_coord(extent: u32) -> f64 {
    f64::from(extent).next_down()
}

/// `n` points drawn uniformly over `[0, width) x [0, height)`.
pub fn uniform(n: usize, dims: ImageDims, seed: u64) -> KeyPointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = KeyPointSet::new("uniform", "synthetic");
    set.points.reserve(n);
    for _ in 0..n {
        let x = rng.random_range(0.0..f64::from(dims.width()));
        let y = rng.random_range(0.0..f64::from(dims.height()));
        set.points.push(crate::keypoint::KeyPoint::new(x, y));
    }
    set
}

/// `n` points scattered with standard deviation `sigma` around `clusters`
/// uniformly placed centres, clipped to the image.
///
/// Points are assigned to centres round-robin, so cluster sizes differ by
/// at most one. With `sigma = 0` every point sits exactly on its centre.
///
/// # Panics
///
/// Panics when `clusters` is zero, or when `sigma` is negative or not
/// finite.
pub fn clustered(n: usize, clusters: usize, sigma: f64, dims: ImageDims, seed: u64) -> KeyPointSet {
    assert!(clusters >= 1, "cluster count must be at least 1");
    assert!(
        sigma >= 0.0 && sigma.is_finite(),
        "sigma must be finite and non-negative, got {sigma}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scatter = Normal::new(0.0, sigma).expect("sigma validated above");
    let centres: Vec<(f64, f64)> = (0..clusters)
        .map(|_| {
            let x = rng.random_range(0.0..f64::from(dims.width()));
            let y = rng.random_range(0.0..f64::from(dims.height()));
            (x, y)
        })
        .collect();
    let mut set = KeyPointSet::new("clustered", "synthetic");
    set.points.reserve(n);
    for i in 0..n {
        let (cx, cy) = centres[i % clusters];
        let x = (cx + scatter.sample(&mut rng)).clamp(0.0, max_coord(dims.width()));
        let y = (cy + scatter.sample(&mut rng)).clamp(0.0, max_coord(dims.height()));
        set.points.push(crate::keypoint::KeyPoint::new(x, y));
    }
    set
}

/// `rows * cols` points on cell centres of a regular grid, row-major.
///
/// Cell `(r, c)` yields the point `((c + 0.5) * width / cols,
/// (r + 0.5) * height / rows)`.
///
/// # Panics
///
/// Panics when `rows` or `cols` is zero.
pub fn grid(rows: u32, cols: u32, dims: ImageDims) -> KeyPointSet {
    assert!(rows >= 1 && cols >= 1, "grid needs at least one row and one column");
    let mut set = KeyPointSet::new("grid", "synthetic");
    set.points.reserve(rows as usize * cols as usize);
    for r in 0..rows {
        for c in 0..cols {
            let x = (f64::from(c) + 0.5) * f64::from(dims.width()) / f64::from(cols);
            let y = (f64::from(r) + 0.5) * f64::from(dims.height()) / f64::from(rows);
            set.points.push(crate::keypoint::KeyPoint::new(x, y));
        }
    }
    set
}
