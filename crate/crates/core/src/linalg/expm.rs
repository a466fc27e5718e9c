//! Matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

const THETA_13: f64 = 5.371_920_351_148_152;

const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// `e^A` for a square matrix.
pub fn expm(a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Dimension {
            op: "expm",
            expected: (n, n),
            got: a.shape(),
        });
    }
    if let Some((row, col)) = a.first_non_finite() {
        return Err(Error::NonFinite { row, col });
    }
    if n == 0 {
        return Ok(DenseMatrix::zeros(0, 0));
    }

    let norm = one_norm(a);
    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let scaled = a.scaled(2f64.powi(-squarings));

    let mut e = pade13(&scaled);
    for _ in 0..squarings {
        e = e.dot(&e);
    }
    Ok(e)
}

fn one_norm(a: &DenseMatrix) -> f64 {
    (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn pade13(a: &DenseMatrix) -> DenseMatrix {
    let n = a.rows();
    let b = &PADE_13;
    let ident = DenseMatrix::identity(n);
    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a4.dot(&a2);

    let lincomb = |c6: f64, c4: f64, c2: f64, c0: f64| {
        let mut m = a6.scaled(c6);
        m.axpy(c4, &a4);
        m.axpy(c2, &a2);
        m.axpy(c0, &ident);
        m
    };

    let mut inner_u = a6.dot(&lincomb(b[13], b[11], b[9], 0.0));
    inner_u.axpy(1.0, &lincomb(b[7], b[5], b[3], b[1]));
    let u = a.dot(&inner_u);

    let mut v = a6.dot(&lincomb(b[12], b[10], b[8], 0.0));
    v.axpy(1.0, &lincomb(b[6], b[4], b[2], b[0]));

    let lhs = v.sub(&u);
    let rhs = v.add(&u);
    lu_solve(lhs, rhs)
}

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
/// `A` here is the Padé denominator, which is nonsingular after scaling.
fn lu_solve(mut a: DenseMatrix, mut b: DenseMatrix) -> DenseMatrix {
    let n = a.rows();
    let nrhs = b.cols();
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs()))
            .unwrap_or(k);
        if pivot != k {
            swap_rows(&mut a, k, pivot);
            swap_rows(&mut b, k, pivot);
        }
        let akk = a[(k, k)];
        for i in (k + 1)..n {
            let l = a[(i, k)] / akk;
            if l == 0.0 {
                continue;
            }
            a[(i, k)] = 0.0;
            for j in (k + 1)..n {
                let t = a[(k, j)];
                a[(i, j)] -= l * t;
            }
            for j in 0..nrhs {
                let t = b[(k, j)];
                b[(i, j)] -= l * t;
            }
        }
    }
    for k in (0..n).rev() {
        let akk = a[(k, k)];
        for j in 0..nrhs {
            let mut s = b[(k, j)];
            for i in (k + 1)..n {
                s -= a[(k, i)] * b[(i, j)];
            }
            b[(k, j)] = s / akk;
        }
    }
    b
}

fn swap_rows(m: &mut DenseMatrix, i: usize, j: usize) {
    let cols = m.cols();
    let data = m.as_mut_slice();
    for c in 0..cols {
        data.swap(i * cols + c, j * cols + c);
    }
}
