//! Row-major dense matrices.
//!
//! `DenseMatrix` stores `data[i * cols + j] = A[i, j]`. Products go through
//! `matrixmultiply::dgemm`, which accepts arbitrary strides, so transposed
//! operands are handled without copying.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Whether an operand of [`gemm`] is used as stored or transposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    N,
    T,
}

#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major entries, rejecting a wrong length or
    /// any NaN/Inf entry.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "entry count {} does not match {rows}x{cols}",
                data.len()
            )));
        }
        let m = DenseMatrix { rows, cols, data };
        if let Some((row, col)) = m.first_non_finite() {
            return Err(Error::NonFinite { row, col });
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        DenseMatrix {
            rows: rows.len(),
            cols: ncols,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Column vector from a slice.
    pub fn column_vector(values: &[f64]) -> Self {
        DenseMatrix {
            rows: values.len(),
            cols: 1,
            data: values.to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// `self · other`. Panics on mismatched inner dimensions.
    pub fn dot(&self, other: &DenseMatrix) -> DenseMatrix {
        product(self, Op::N, other, Op::N)
    }

    /// `selfᵀ · other`.
    pub fn t_dot(&self, other: &DenseMatrix) -> DenseMatrix {
        product(self, Op::T, other, Op::N)
    }

    /// `self · otherᵀ`.
    pub fn dot_t(&self, other: &DenseMatrix) -> DenseMatrix {
        product(self, Op::N, other, Op::T)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> DenseMatrix {
        self.map(|x| s * x)
    }

    pub fn scale_mut(&mut self, s: f64) {
        self.data.iter_mut().for_each(|x| *x *= s);
    }

    /// `self += alpha · x`.
    pub fn axpy(&mut self, alpha: f64, x: &DenseMatrix) {
        assert_eq!(self.shape(), x.shape(), "axpy shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&x.data) {
            *a += alpha * b;
        }
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        // scaled accumulation avoids overflow for large entries
        let scale = self.max_abs();
        if scale == 0.0 || !scale.is_finite() {
            return scale;
        }
        let ssq: f64 = self.data.iter().map(|&x| (x / scale) * (x / scale)).sum();
        scale * ssq.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
    }

    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|x| !x.is_finite())
            .map(|k| (k / self.cols.max(1), k % self.cols.max(1)))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Copies the `nr × nc` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> DenseMatrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, src: &DenseMatrix) {
        assert!(
            r0 + src.rows <= self.rows && c0 + src.cols <= self.cols,
            "block out of range"
        );
        for i in 0..src.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + src.cols].copy_from_slice(src.row(i));
        }
    }

    /// `[self other]`.
    pub fn hstack(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        DenseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// `‖selfᵀ self − I‖_F`.
    pub fn orthonormality_defect(&self) -> f64 {
        self.t_dot(self).sub(&Self::identity(self.cols)).frobenius_norm()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(8) {
            write!(f, "  ")?;
            for j in 0..self.cols.min(8) {
                write!(f, "{:>12.5e} ", self[(i, j)])?;
            }
            if self.cols > 8 {
                write!(f, "...")?;
            }
            writeln!(f)?;
        }
        if self.rows > 8 {
            writeln!(f, "  ...")?;
        }
        write!(f, "]")
    }
}

fn op_shape(m: &DenseMatrix, op: Op) -> (usize, usize) {
    match op {
        Op::N => (m.rows, m.cols),
        Op::T => (m.cols, m.rows),
    }
}

fn op_strides(m: &DenseMatrix, op: Op) -> (isize, isize) {
    let ld = m.cols as isize;
    match op {
        Op::N => (ld, 1),
        Op::T => (1, ld),
    }
}

/// `op(a) · op(b)` as a new matrix.
pub fn product(a: &DenseMatrix, ta: Op, b: &DenseMatrix, tb: Op) -> DenseMatrix {
    let (m, _) = op_shape(a, ta);
    let (_, n) = op_shape(b, tb);
    let mut c = DenseMatrix::zeros(m, n);
    gemm(1.0, a, ta, b, tb, 0.0, &mut c);
    c
}

/// `c ← alpha · op(a) · op(b) + beta · c`.
pub fn gemm(alpha: f64, a: &DenseMatrix, ta: Op, b: &DenseMatrix, tb: Op, beta: f64, c: &mut DenseMatrix) {
    let (m, k) = op_shape(a, ta);
    let (k2, n) = op_shape(b, tb);
    assert_eq!(k, k2, "gemm inner dimension mismatch: {k} vs {k2}");
    assert_eq!((m, n), c.shape(), "gemm output shape mismatch");
    if m == 0 || n == 0 {
        return;
    }
    if k == 0 {
        c.scale_mut(beta);
        return;
    }
    let (rsa, csa) = op_strides(a, ta);
    let (rsb, csb) = op_strides(b, tb);
    // SAFETY: the strides describe exactly the row-major buffers owned by
    // `a`, `b` and `c`, whose shapes were checked above; `c` does not alias
    // `a` or `b` because it is borrowed mutably.
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            alpha,
            a.data.as_ptr(),
            rsa,
            csa,
            b.data.as_ptr(),
            rsb,
            csb,
            beta,
            c.data.as_mut_ptr(),
            c.cols as isize,
            1,
        );
    }
}

/// Relative Frobenius distance `‖a − b‖_F / ‖b‖_F` (absolute when `b = 0`).
pub fn rel_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let nb = b.frobenius_norm();
    let d = a.sub(b).frobenius_norm();
    if nb == 0.0 {
        d
    } else {
        d / nb
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_rejects_bad_input() {
        assert!(DenseMatrix::new(2, 2, vec![1.0; 3]).is_err());
        assert!(matches!(
            DenseMatrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
    }

    #[test]
    fn transposed_products_agree() {
        let a = DenseMatrix::from_rows(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]]);
        let b = DenseMatrix::from_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[2.0, -1.0]]);
        let ab = a.dot(&b);
        assert_eq!(ab, DenseMatrix::from_rows(&[&[7.0, -1.0], &[16.0, -1.0]]));
        assert_eq!(a.transpose().t_dot(&b), ab);
        assert_eq!(a.dot_t(&b.transpose()), ab);
    }

    #[test]
    fn stacking_and_blocks() {
        let a = DenseMatrix::identity(2);
        let b = DenseMatrix::from_rows(&[&[5.0], &[6.0]]);
        let h = a.hstack(&b);
        assert_eq!(h.shape(), (2, 3));
        assert_eq!(h.block(0, 2, 2, 1), b);
        let v = a.vstack(&a);
        assert_eq!(v.block(2, 0, 2, 2), a);
    }

    #[test]
    fn frobenius_of_3_4() {
        let a = DenseMatrix::from_rows(&[&[3.0, 4.0]]);
        assert!((a.frobenius_norm() - 5.0).abs() < 1e-15);
        assert_eq!(DenseMatrix::zeros(2, 2).frobenius_norm(), 0.0);
    }
}
