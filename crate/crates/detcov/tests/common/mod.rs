//! Shared helpers for integration tests.
//!
//! `oracle_coverage` is a deliberately naive reference implementation.
//! It must stay structurally independent of the library path: plain
//! linear-scan de-duplication and a double loop over ordered index
//! pairs, with no sorting and no per-point accumulation.

use detcov::keypoint::KeyPointSet;

/// Reference coverage: n(n-1) / (2 * sum of reciprocal pair distances)
/// over distinct locations. `None` when fewer than two remain.
pub fn oracle_coverage(points: &[(f64, f64)]) -> Option<f64> {
    let mut distinct: Vec<(f64, f64)> = Vec::new();
    for &(x, y) in points {
        if !distinct.iter().any(|&(px, py)| px == x && py == y) {
            distinct.push((x, y));
        }
    }
    let n = distinct.len();
    if n < 2 {
        return None;
    }
    let mut reciprocal_sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = distinct[i].0 - distinct[j].0;
            let dy = distinct[i].1 - distinct[j].1;
            reciprocal_sum += 1.0 / (dx * dx + dy * dy).sqrt();
        }
    }
    Some(n as f64 * (n - 1) as f64 / (2.0 * reciprocal_sum))
}

/// The bare coordinates of a set, in stored order.
pub fn xy(set: &KeyPointSet) -> Vec<(f64, f64)> {
    set.points
        .iter()
        .map(|p| (p.location.x, p.location.y))
        .collect()
}

/// Relative error of `actual` against a nonzero `expected`.
pub fn rel_err(actual: f64, expected: f64) -> f64 {
    (actual - expected).abs() / expected.abs()
}
