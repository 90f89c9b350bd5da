//! Keypoint CSV: one point per line, comma separated.
//!
//! Layout per data line: `x,y[,scale[,extra...]]`. The first two fields
//! are mandatory finite coordinates. The third, when present and
//! non-empty, is a finite positive scale; an empty third field means "no
//! scale". Any further fields ride along as opaque attribute strings.
//! An optional header line (`x,y` or `x,y,scale`, extra names allowed) is
//! recognised and skipped. Blank lines are ignored.

use super::{ParseError, RowError};
use crate::keypoint::{KeyPoint, KeyPointSet, Point};

fn is_header(line: &str) -> bool {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    fields.len() >= 2
        && fields[0] == "x"
        && fields[1] == "y"
        && (fields.len() == 2 || fields[2] == "scale")
}

fn parse_finite(field: &str, what: &str) -> Result<f64, String> {
    let trimmed = field.trim();
    let value: f64 = trimmed
        .parse()
        .map_err(|_| format!("{what} is not a number: {trimmed:?}"))?;
    if !value.is_finite() {
        return Err(format!("{what} must be finite, got {trimmed:?}"));
    }
    Ok(value)
}

fn parse_row(line: &str) -> Result<KeyPoint, String> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() < 2 {
        return Err(format!(
            "expected at least 2 comma-separated fields, found {}",
            fields.len()
        ));
    }
    let x = parse_finite(fields[0], "x coordinate")?;
    let y = parse_finite(fields[1], "y coordinate")?;
    let scale = match fields.get(2) {
        None => None,
        Some(cell) if cell.trim().is_empty() => None,
        Some(cell) => {
            let value = parse_finite(cell, "scale")?;
            if value <= 0.0 {
                return Err(format!("scale must be positive, got {}", cell.trim()));
            }
            Some(value)
        }
    };
    Ok(KeyPoint {
        location: Point::new(x, y),
        scale,
        attributes: fields
            .get(3..)
            .unwrap_or_default()
            .iter()
            .map(|s| s.to_string())
            .collect(),
    })
}

pub(super) fn parse(input: &str) -> Result<Vec<KeyPoint>, ParseError> {
    if input.trim().is_empty() {
        return Err(ParseError::EmptyFile);
    }
    let mut points = Vec::new();
    let mut rows = Vec::new();
    let mut header_window_open = true;
    for (idx, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if header_window_open {
            header_window_open = false;
            if is_header(raw) {
                continue;
            }
        }
        match parse_row(raw) {
            Ok(point) => points.push(point),
            Err(message) => rows.push(RowError { line: idx + 1, message }),
        }
    }
    if rows.is_empty() {
        Ok(points)
    } else {
        Err(ParseError::Malformed { rows })
    }
}

pub(super) fn write(set: &KeyPointSet) -> String {
    let mut out = String::new();
    if set.points.iter().any(|kp| kp.scale.is_some()) {
        out.push_str("x,y,scale\n");
    } else {
        out.push_str("x,y\n");
    }
    for kp in &set.points {
        out.push_str(&kp.location.x.to_string());
        out.push(',');
        out.push_str(&kp.location.y.to_string());
        if kp.scale.is_some() || !kp.attributes.is_empty() {
            out.push(',');
            if let Some(scale) = kp.scale {
                out.push_str(&scale.to_string());
            }
        }
        for attribute in &kp.attributes {
            out.push(',');
            out.push_str(attribute);
        }
        out.push('\n');
    }
    out
}
