//! Householder thin QR with a nonnegative-diagonal sign convention.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Relative size below which an `R` diagonal entry counts as zero.
pub const DEGENERATE_RANK_TOL: f64 = 1e-14;

/// Thin QR factors `A = Q R` with `Q` m×r orthonormal and `R` r×r upper
/// triangular with a nonnegative diagonal.
#[derive(Clone, Debug)]
pub struct QrPair {
    pub q: DenseMatrix,
    pub r: DenseMatrix,
    /// Set when some diagonal entry of `R` is below `1e-14 · ‖A‖_F`.
    pub rank_deficient: bool,
}

/// Householder QR of an m×r matrix with m ≥ r.
///
/// Columns that are exactly zero below the diagonal get an identity
/// reflector, so `Q` stays orthonormal for rank-deficient input and the
/// missing directions are filled deterministically.
pub fn thin_qr(a: &DenseMatrix) -> Result<QrPair> {
    let (m, r) = a.shape();
    if m < r {
        return Err(Error::Dimension {
            op: "thin_qr",
            expected: (r, r),
            got: (m, r),
        });
    }

    // column-major working copy: col j occupies work[j*m..(j+1)*m]
    let mut work = vec![0.0; m * r];
    for i in 0..m {
        for j in 0..r {
            work[j * m + i] = a[(i, j)];
        }
    }

    let mut reflectors: Vec<(Vec<f64>, f64)> = Vec::with_capacity(r);
    let mut rmat = DenseMatrix::zeros(r, r);

    for k in 0..r {
        let (head, tail) = work.split_at_mut((k + 1) * m);
        let col = &mut head[k * m + k..(k + 1) * m];
        let norm = norm2(col);
        if norm == 0.0 {
            reflectors.push((Vec::new(), 0.0));
            for j in (k + 1)..r {
                rmat[(k, j)] = tail[(j - k - 1) * m + k];
            }
            continue;
        }
        let alpha = if col[0] > 0.0 { -norm } else { norm };
        let mut v = col.to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        let beta = if vnorm2 > 0.0 { 2.0 / vnorm2 } else { 0.0 };
        rmat[(k, k)] = alpha;

        for j in (k + 1)..r {
            let cj = &mut tail[(j - k - 1) * m + k..(j - k) * m];
            let s = beta * dot(&v, cj);
            for (c, vi) in cj.iter_mut().zip(&v) {
                *c -= s * vi;
            }
            rmat[(k, j)] = cj[0];
        }
        reflectors.push((v, beta));
    }

    // Q = H_0 ⋯ H_{r-1} [I_r; 0], accumulated backwards
    let mut qwork = vec![0.0; m * r];
    for j in 0..r {
        qwork[j * m + j] = 1.0;
    }
    for k in (0..r).rev() {
        let (v, beta) = &reflectors[k];
        if *beta == 0.0 {
            continue;
        }
        for j in k..r {
            let cj = &mut qwork[j * m + k..(j + 1) * m];
            let s = beta * dot(v, cj);
            for (c, vi) in cj.iter_mut().zip(v) {
                *c -= s * vi;
            }
        }
    }

    let mut q = DenseMatrix::zeros(m, r);
    for j in 0..r {
        let flip = rmat[(j, j)] < 0.0;
        let sign = if flip { -1.0 } else { 1.0 };
        for i in 0..m {
            q[(i, j)] = sign * qwork[j * m + i];
        }
        if flip {
            for jj in j..r {
                rmat[(j, jj)] = -rmat[(j, jj)];
            }
        }
    }

    let threshold = DEGENERATE_RANK_TOL * a.frobenius_norm();
    let rank_deficient = (0..r).any(|k| rmat[(k, k)] <= threshold);

    Ok(QrPair {
        q,
        r: rmat,
        rank_deficient,
    })
}

fn norm2(x: &[f64]) -> f64 {
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * x.iter().map(|v| (v / scale) * (v / scale)).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rel_diff;

    #[test]
    fn identity_factors_trivially() {
        let qr = thin_qr(&DenseMatrix::identity(3)).unwrap();
        assert!(rel_diff(&qr.q, &DenseMatrix::identity(3)) < 1e-15);
        assert!(rel_diff(&qr.r, &DenseMatrix::identity(3)) < 1e-15);
        assert!(!qr.rank_deficient);
    }

    #[test]
    fn three_four_column() {
        let a = DenseMatrix::column_vector(&[3.0, 4.0]);
        let qr = thin_qr(&a).unwrap();
        assert!((qr.q[(0, 0)] - 0.6).abs() < 1e-15);
        assert!((qr.q[(1, 0)] - 0.8).abs() < 1e-15);
        assert!((qr.r[(0, 0)] - 5.0).abs() < 1e-15);
    }

    #[test]
    fn wide_input_is_a_dimension_error() {
        let a = DenseMatrix::zeros(2, 3);
        assert!(matches!(thin_qr(&a), Err(Error::Dimension { .. })));
    }

    #[test]
    fn zero_block_yields_orthonormal_basis_and_flag() {
        let a = DenseMatrix::zeros(5, 3);
        let qr = thin_qr(&a).unwrap();
        assert!(qr.rank_deficient);
        assert!(qr.q.orthonormality_defect() < 1e-15);
        assert_eq!(qr.r, DenseMatrix::zeros(3, 3));
    }

    #[test]
    fn rank_deficient_column_is_completed() {
        // second column is a multiple of the first
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0], &[1.0, 2.0], &[0.0, 0.0]]);
        let qr = thin_qr(&a).unwrap();
        assert!(qr.rank_deficient);
        assert!(qr.q.orthonormality_defect() < 1e-14);
        assert!(rel_diff(&qr.q.dot(&qr.r), &a) < 1e-14);
    }

    #[test]
    fn r_is_upper_triangular_with_nonnegative_diagonal() {
        let a = DenseMatrix::from_fn(6, 4, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0 + 0.1 * j as f64);
        let qr = thin_qr(&a).unwrap();
        for i in 0..4 {
            assert!(qr.r[(i, i)] >= 0.0);
            for j in 0..i {
                assert_eq!(qr.r[(i, j)], 0.0);
            }
        }
    }
}
