//! Fixed-rank truncated SVD by one-sided (Hestenes) Jacobi rotations.
//!
//! Jacobi reaches full relative accuracy in the singular values and keeps
//! `‖A − UΣVᵀ‖` at the level of machine precision, which the
//! bidiagonalization routines available as crates did not on tall inputs.

use crate::error::{Error, Result};
use crate::linalg::{thin_qr, DenseMatrix, LowRankFactor};

/// Ratio below which the smallest kept singular value makes `S` singular.
pub const SINGULAR_CORE_TOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 80;

#[derive(Clone, Debug)]
pub struct TruncatedSvd {
    /// `S` is diagonal with the r largest singular values, nonincreasing.
    pub factor: LowRankFactor,
    pub singular_values: Vec<f64>,
    /// The smallest kept value is below `1e-14 ×` the largest (or all zero).
    pub singular: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rotate(a: &mut [f64], b: &mut [f64], c: f64, s: f64) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (p, q) = (*x, *y);
        *x = c * p - s * q;
        *y = s * p + c * q;
    }
}

/// Orthogonalizes the columns of `g` (m ≥ n) in place and returns the
/// accumulated right rotations, one column per vector.
fn jacobi(g: &mut [Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut v: Vec<Vec<f64>> = (0..n).map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(&g[p], &g[p]);
                let beta = dot(&g[q], &g[q]);
                let gamma = dot(&g[p], &g[q]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + zeta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = c * t;
                let (lo, hi) = g.split_at_mut(q);
                rotate(&mut lo[p], &mut hi[0], c, s);
                let (lo, hi) = v.split_at_mut(q);
                rotate(&mut lo[p], &mut hi[0], c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    v
}

/// Best rank-`rank` Frobenius approximation of `a`.
pub fn truncated_svd(a: &DenseMatrix, rank: usize) -> Result<TruncatedSvd> {
    let (m, n) = a.shape();
    if rank == 0 || rank > m.min(n) {
        return Err(Error::RankOutOfRange {
            op: "truncated_svd",
            rank,
            rows: m,
            cols: n,
        });
    }
    // work on the orientation with more rows than columns
    let wide = m < n;
    let src = if wide { a.transpose() } else { a.clone() };
    let (rows, cols) = src.shape();
    let mut g: Vec<Vec<f64>> = (0..cols).map(|j| src.column(j)).collect();
    let v = jacobi(&mut g);

    let norms: Vec<f64> = g.iter().map(|c| dot(c, c).sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]).then(i.cmp(&j)));
    let kept = &order[..rank];
    let values: Vec<f64> = kept.iter().map(|&k| norms[k]).collect();
    let largest = values[0];
    let tiny = |s: f64| s == 0.0 || s < SINGULAR_CORE_TOL * largest;

    let left = DenseMatrix::from_fn(rows, rank, |i, c| {
        let s = values[c];
        if tiny(s) {
            0.0
        } else {
            g[kept[c]][i] / s
        }
    });
    // zero columns are completed to an orthonormal basis
    let left = if values.iter().any(|&s| tiny(s)) { thin_qr(&left)?.q } else { left };
    let right = DenseMatrix::from_fn(cols, rank, |i, c| v[kept[c]][i]);

    let (u, vv) = if wide { (right, left) } else { (left, right) };
    Ok(TruncatedSvd {
        factor: LowRankFactor::new(u, DenseMatrix::from_diag(&values), vv)?,
        singular: tiny(values[rank - 1]),
        singular_values: values,
    })
}
