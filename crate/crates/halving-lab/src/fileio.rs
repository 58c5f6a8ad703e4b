//! The plain-text point-set file format.
//!
//! ```text
//! line 1:        n
//! lines 2..n+1:  x y     (decimal integers, single space, LF)
//! ```
//!
//! Writing then reading a set reproduces it exactly, byte for byte.

use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::geom::{check_general_position, GpViolation, PointSet};

#[derive(Debug, Error)]
pub enum ReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    GeneralPosition(#[from] GpViolation),
}

fn malformed(line: usize, reason: impl Into<String>) -> ReadError {
    ReadError::Malformed {
        line,
        reason: reason.into(),
    }
}

/// Serializes a point set in the text format.
pub fn format_pointset(ps: &PointSet) -> String {
    let mut out = String::with_capacity(ps.n() * 16 + 8);
    out.push_str(&ps.n().to_string());
    out.push('\n');
    for p in ps.iter() {
        out.push_str(&p.x.to_string());
        out.push(' ');
        out.push_str(&p.y.to_string());
        out.push('\n');
    }
    out
}

pub fn write_pointset(ps: &PointSet, path: impl AsRef<Path>) -> io::Result<()> {
    fs::write(path, format_pointset(ps))
}

/// Parses the text format; the result is checked for general position.
pub fn parse_pointset(text: &str) -> Result<PointSet, ReadError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| malformed(1, "empty file"))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| malformed(1, format!("expected a point count, got '{header}'")))?;
    let mut coords = Vec::with_capacity(n);
    for (idx, line) in lines.by_ref() {
        if coords.len() == n {
            return Err(malformed(
                idx + 1,
                format!("{n} points declared, but extra content follows"),
            ));
        }
        let (x, y) = line
            .split_once(' ')
            .ok_or_else(|| malformed(idx + 1, "expected 'x y'"))?;
        let x: i64 = x
            .parse()
            .map_err(|_| malformed(idx + 1, format!("invalid x coordinate '{x}'")))?;
        let y: i64 = y
            .parse()
            .map_err(|_| malformed(idx + 1, format!("invalid y coordinate '{y}'")))?;
        coords.push((x, y));
    }
    if coords.len() < n {
        return Err(malformed(
            coords.len() + 1,
            format!("{n} points declared, {} provided", coords.len()),
        ));
    }
    let ps = PointSet::from_coords(coords);
    check_general_position(&ps)?;
    Ok(ps)
}

pub fn read_pointset(path: impl AsRef<Path>) -> Result<PointSet, ReadError> {
    parse_pointset(&fs::read_to_string(path)?)
}
