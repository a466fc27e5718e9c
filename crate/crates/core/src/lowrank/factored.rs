use crate::error::{Error, Result};
use crate::linalg::{gemm, DenseMatrix, Op};

/// A linear map `Δ: ℝⁿ → ℝᵐ` that can be applied to blocks of vectors from
/// either side.
pub trait MatrixAction {
    fn shape(&self) -> (usize, usize);
    /// `Δ · v` for an n×k block.
    fn apply(&self, v: &DenseMatrix) -> DenseMatrix;
    /// `Δᵀ · u` for an m×k block.
    fn apply_t(&self, u: &DenseMatrix) -> DenseMatrix;
}

impl MatrixAction for DenseMatrix {
    fn shape(&self) -> (usize, usize) {
        DenseMatrix::shape(self)
    }

    fn apply(&self, v: &DenseMatrix) -> DenseMatrix {
        self.dot(v)
    }

    fn apply_t(&self, u: &DenseMatrix) -> DenseMatrix {
        self.t_dot(u)
    }
}

#[derive(Clone, Debug)]
pub struct FactoredTerm {
    pub left: DenseMatrix,
    pub core: DenseMatrix,
    pub right: DenseMatrix,
}

/// `Σᵢ Lᵢ Cᵢ Rᵢᵀ`, kept factored.
#[derive(Clone, Debug)]
pub struct FactoredSum {
    rows: usize,
    cols: usize,
    terms: Vec<FactoredTerm>,
}

impl FactoredSum {
    pub fn new(rows: usize, cols: usize) -> Self {
        FactoredSum {
            rows,
            cols,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, left: DenseMatrix, core: DenseMatrix, right: DenseMatrix) -> Result<()> {
        if left.rows() != self.rows || right.rows() != self.cols {
            return Err(Error::Dimension {
                op: "FactoredSum::push",
                expected: (self.rows, self.cols),
                got: (left.rows(), right.rows()),
            });
        }
        if core.shape() != (left.cols(), right.cols()) {
            return Err(Error::Dimension {
                op: "FactoredSum::push (core)",
                expected: (left.cols(), right.cols()),
                got: core.shape(),
            });
        }
        self.terms.push(FactoredTerm { left, core, right });
        Ok(())
    }

    pub fn with_term(mut self, left: DenseMatrix, core: DenseMatrix, right: DenseMatrix) -> Result<Self> {
        self.push(left, core, right)?;
        Ok(self)
    }

    pub fn terms(&self) -> &[FactoredTerm] {
        &self.terms
    }

    /// Upper bound on the represented rank.
    pub fn max_rank(&self) -> usize {
        self.terms.iter().map(|t| t.core.rows().min(t.core.cols())).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows, self.cols);
        for t in &self.terms {
            let lc = t.left.dot(&t.core);
            gemm(1.0, &lc, Op::N, &t.right, Op::T, 1.0, &mut out);
        }
        out
    }
}

impl MatrixAction for FactoredSum {
    fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn apply(&self, v: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows, v.cols());
        for t in &self.terms {
            let inner = t.core.dot(&t.right.t_dot(v));
            gemm(1.0, &t.left, Op::N, &inner, Op::N, 1.0, &mut out);
        }
        out
    }

    fn apply_t(&self, u: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.cols, u.cols());
        for t in &self.terms {
            let inner = t.core.t_dot(&t.left.t_dot(u));
            gemm(1.0, &t.right, Op::N, &inner, Op::N, 1.0, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rel_diff;

    #[test]
    fn factored_products_match_dense() {
        let l1 = DenseMatrix::from_fn(5, 2, |i, j| (i + 2 * j) as f64 - 1.5);
        let c1 = DenseMatrix::from_rows(&[&[1.0, 0.5], &[-0.25, 2.0]]);
        let r1 = DenseMatrix::from_fn(4, 2, |i, j| ((i * j) % 3) as f64 + 0.1);
        let l2 = DenseMatrix::from_fn(5, 1, |i, _| i as f64);
        let c2 = DenseMatrix::from_rows(&[&[3.0]]);
        let r2 = DenseMatrix::from_fn(4, 1, |i, _| 1.0 - i as f64);
        let sum = FactoredSum::new(5, 4)
            .with_term(l1, c1, r1)
            .unwrap()
            .with_term(l2, c2, r2)
            .unwrap();
        assert_eq!(sum.max_rank(), 3);
        let dense = sum.to_dense();
        let v = DenseMatrix::from_fn(4, 3, |i, j| (i as f64 - j as f64) * 0.3);
        let u = DenseMatrix::from_fn(5, 2, |i, j| (i + j) as f64 * 0.1);
        assert!(rel_diff(&sum.apply(&v), &dense.dot(&v)) < 1e-14);
        assert!(rel_diff(&sum.apply_t(&u), &dense.t_dot(&u)) < 1e-14);
    }

    #[test]
    fn push_checks_shapes() {
        let mut s = FactoredSum::new(3, 3);
        assert!(s
            .push(DenseMatrix::zeros(2, 1), DenseMatrix::zeros(1, 1), DenseMatrix::zeros(3, 1))
            .is_err());
        assert!(s
            .push(DenseMatrix::zeros(3, 1), DenseMatrix::zeros(2, 1), DenseMatrix::zeros(3, 1))
            .is_err());
    }
}
