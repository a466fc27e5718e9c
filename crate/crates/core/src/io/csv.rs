use std::fmt::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::ConvergenceCell;
use crate::io::write_atomic;
use crate::linalg::DenseMatrix;

pub const CSV_HEADER: &str = "rank,M,tau,relerr,rate,status";

/// Renders cells in `(rank, M)` order regardless of input order.
pub fn format_csv(cells: &[ConvergenceCell]) -> Result<String> {
    if cells.is_empty() {
        return Err(Error::Validation("convergence table is empty".into()));
    }
    let mut sorted: Vec<&ConvergenceCell> = cells.iter().collect();
    sorted.sort_by_key(|c| (c.rank, c.steps));
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for c in sorted {
        let rate = c.rate.map(|r| format!("{r:.6e}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{:.6e},{:.6e},{},{}",
            c.rank,
            c.steps,
            c.tau,
            c.relerr,
            rate,
            c.status.as_str()
        )
        .unwrap();
    }
    Ok(out)
}

pub fn write_csv(cells: &[ConvergenceCell], path: &Path) -> Result<()> {
    write_atomic(path, format_csv(cells)?.as_bytes())
}

/// One line per matrix row, 17 significant digits per entry.
pub fn format_matrix_csv(m: &DenseMatrix) -> String {
    let mut out = String::with_capacity(m.rows() * m.cols() * 24);
    for i in 0..m.rows() {
        for (j, v) in m.row(i).iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix_csv(m: &DenseMatrix, path: &Path) -> Result<()> {
    write_atomic(path, format_matrix_csv(m).as_bytes())
}

/// Inverse of [`format_matrix_csv`].
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix> {
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(',')
                .map(|v| v.trim().parse::<f64>().map_err(|e| Error::Validation(format!("bad matrix entry `{v}`: {e}"))))
                .collect()
        })
        .collect::<Result<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Validation("matrix rows have different lengths".into()));
    }
    DenseMatrix::new(rows.len(), cols, rows.concat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::CellStatus;
    use std::time::Duration;

    fn cell(rank: usize, steps: usize, relerr: f64, rate: Option<f64>) -> ConvergenceCell {
        ConvergenceCell {
            rank,
            steps,
            tau: 0.1 / steps as f64,
            relerr,
            rate,
            status: if relerr.is_nan() { CellStatus::BlowUp } else { CellStatus::Ok },
            wall_time: Duration::ZERO,
        }
    }

    #[test]
    fn single_row_format() {
        let text = format_csv(&[cell(13, 20, 8.476e-5, None)]).unwrap();
        assert_eq!(text, "rank,M,tau,relerr,rate,status\n13,20,5.000000e-3,8.476000e-5,,ok\n");
    }

    #[test]
    fn rows_sorted_and_failures_marked() {
        let cells = [
            cell(13, 40, 2.1772e-5, Some(1.960_899)),
            cell(7, 20, f64::NAN, None),
            cell(13, 20, 8.476e-5, None),
        ];
        let text = format_csv(&cells).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "7,20,5.000000e-3,NaN,,blowup");
        assert_eq!(lines[2], "13,20,5.000000e-3,8.476000e-5,,ok");
        assert_eq!(lines[3], "13,40,2.500000e-3,2.177200e-5,1.960899e0,ok");
        assert_eq!(text, format_csv(&cells).unwrap());
    }

    #[test]
    fn empty_table_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        assert!(write_csv(&[], &p).is_err());
        assert!(!p.exists());
    }

    #[test]
    fn matrix_csv_roundtrip_is_exact() {
        let m = DenseMatrix::from_fn(3, 4, |i, j| (i as f64 + 0.1).powi(j as i32 + 1) / 7.0 - 1e-300);
        let text = format_matrix_csv(&m);
        assert_eq!(text.lines().count(), 3);
        assert_eq!(parse_matrix_csv(&text).unwrap(), m);
    }
}
