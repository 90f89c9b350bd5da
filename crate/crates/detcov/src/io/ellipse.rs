//! The shared affine-region ellipse text format.
//!
//! Layout:
//!
//! ```text
//! 1.0                  <- legacy scale factor, validated then ignored
//! 3                    <- number of regions
//! x y a b c            <- one region per line, whitespace separated
//! ...
//! ```
//!
//! Each region is an ellipse `a(u-x)^2 + 2b(u-x)(v-y) + c(v-y)^2 = 1`
//! centred on `(x, y)`. Only the centre feeds the coverage metrics; the
//! three shape parameters are preserved verbatim as point attributes so
//! nothing is lost on ingest.

use super::{ParseError, RowError};
use crate::keypoint::{KeyPoint, Point};

fn parse_region(line: &str) -> Result<KeyPoint, String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(format!(
            "expected 5 whitespace-separated values (x y a b c), found {}",
            fields.len()
        ));
    }
    for (field, name) in fields.iter().zip(["x", "y", "a", "b", "c"]) {
        let value: f64 = field
            .parse()
            .map_err(|_| format!("{name} is not a number: {field:?}"))?;
        if !value.is_finite() {
            return Err(format!("{name} must be finite, got {field:?}"));
        }
    }
    let x: f64 = fields[0].parse().expect("validated above");
    let y: f64 = fields[1].parse().expect("validated above");
    Ok(KeyPoint {
        location: Point::new(x, y),
        scale: None,
        attributes: fields[2..].iter().map(|s| s.to_string()).collect(),
    })
}

pub(super) fn parse(input: &str) -> Result<Vec<KeyPoint>, ParseError> {
    if input.trim().is_empty() {
        return Err(ParseError::EmptyFile);
    }
    // Pair each non-blank line with its 1-based position in the file.
    let mut content = input
        .lines()
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty());

    let (scale_line, scale_text) = content.next().expect("input has non-blank content");
    let scale_factor: f64 = scale_text.parse().map_err(|_| ParseError::Header {
        line: scale_line,
        message: format!("invalid scale factor: {scale_text:?}"),
    })?;
    if !scale_factor.is_finite() {
        return Err(ParseError::Header {
            line: scale_line,
            message: format!("scale factor must be finite, got {scale_text:?}"),
        });
    }

    let (count_line, count_text) = content.next().ok_or(ParseError::Header {
        line: scale_line,
        message: "missing region count line".to_string(),
    })?;
    let declared: usize = count_text.parse().map_err(|_| ParseError::Header {
        line: count_line,
        message: format!("invalid region count: {count_text:?}"),
    })?;

    let data: Vec<(usize, &str)> = content.collect();
    if data.len() != declared {
        return Err(ParseError::CountMismatch { declared, found: data.len() });
    }

    let mut points = Vec::with_capacity(declared);
    let mut rows = Vec::new();
    for (line, text) in data {
        match parse_region(text) {
            Ok(point) => points.push(point),
            Err(message) => rows.push(RowError { line, message }),
        }
    }
    if rows.is_empty() {
        Ok(points)
    } else {
        Err(ParseError::Malformed { rows })
    }
}
