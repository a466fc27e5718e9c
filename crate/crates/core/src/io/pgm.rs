use std::path::Path;

use crate::error::{Error, Result};
use crate::io::write_atomic;
use crate::linalg::DenseMatrix;

/// Gray-level normalization of a single frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PgmRange {
    /// Extrema of the frame itself.
    Frame,
    Fixed { lo: f64, hi: f64 },
}

/// Binary `P5` image with one pixel per matrix entry, row 0 on top.
pub fn encode_pgm(field: &DenseMatrix, range: PgmRange) -> Result<Vec<u8>> {
    if let Some((row, col)) = field.first_non_finite() {
        return Err(Error::NonFinite { row, col });
    }
    let (lo, hi) = match range {
        PgmRange::Frame => field
            .as_slice()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v))),
        PgmRange::Fixed { lo, hi } => (lo, hi),
    };
    let mut out = format!("P5\n{} {}\n255\n", field.cols(), field.rows()).into_bytes();
    let span = hi - lo;
    out.extend(field.as_slice().iter().map(|&v| {
        if span > 0.0 {
            (255.0 * (v - lo) / span).round().clamp(0.0, 255.0) as u8
        } else {
            0
        }
    }));
    Ok(out)
}

pub fn write_pgm(field: &DenseMatrix, path: &Path, range: PgmRange) -> Result<()> {
    write_atomic(path, &encode_pgm(field, range)?)
}

/// Parses a `P5` image with maxval 255 into `(width, height, pixels)`.
pub fn read_pgm(bytes: &[u8]) -> Result<(usize, usize, Vec<u8>)> {
    let bad = |m: &str| Error::Validation(format!("malformed PGM: {m}"));
    let mut fields = Vec::with_capacity(4);
    let mut pos = 0;
    while fields.len() < 4 {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("header is not ASCII"))?);
    }
    if fields[0] != "P5" || fields[3] != "255" {
        return Err(bad("expected P5 with maxval 255"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad("bad dimension"));
    let (w, h) = (num(fields[1])?, num(fields[2])?);
    let data = &bytes[(pos + 1).min(bytes.len())..];
    if data.len() != w * h {
        return Err(bad("pixel count does not match header"));
    }
    Ok((w, h, data.to_vec()))
}
