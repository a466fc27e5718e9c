use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Op};

/// A rank-r matrix held as `U S Vᵀ`.
///
/// `U` (m×r) and `V` (n×r) have orthonormal columns; the r×r core `S` need
/// not be diagonal.
#[derive(Clone, Debug)]
pub struct LowRankFactor {
    pub u: DenseMatrix,
    pub s: DenseMatrix,
    pub v: DenseMatrix,
}

impl LowRankFactor {
    pub fn new(u: DenseMatrix, s: DenseMatrix, v: DenseMatrix) -> Result<Self> {
        let r = u.cols();
        if s.shape() != (r, r) {
            return Err(Error::Dimension {
                op: "LowRankFactor::new (core)",
                expected: (r, r),
                got: s.shape(),
            });
        }
        if v.cols() != r {
            return Err(Error::Dimension {
                op: "LowRankFactor::new (right basis)",
                expected: (v.rows(), r),
                got: v.shape(),
            });
        }
        if r > u.rows().min(v.rows()) {
            return Err(Error::RankOutOfRange {
                op: "LowRankFactor::new",
                rank: r,
                rows: u.rows(),
                cols: v.rows(),
            });
        }
        Ok(LowRankFactor { u, s, v })
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.s.rows()
    }

    /// Outer shape `(m, n)` of the represented matrix.
    pub fn shape(&self) -> (usize, usize) {
        (self.u.rows(), self.v.rows())
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let us = self.u.dot(&self.s);
        crate::linalg::product(&us, Op::N, &self.v, Op::T)
    }

    /// Factors of the transposed matrix, `V Sᵀ Uᵀ`.
    pub fn transposed(&self) -> LowRankFactor {
        LowRankFactor {
            u: self.v.clone(),
            s: self.s.transpose(),
            v: self.u.clone(),
        }
    }

    /// Larger of `‖UᵀU − I‖_F` and `‖VᵀV − I‖_F`.
    pub fn orthonormality_defect(&self) -> f64 {
        self.u
            .orthonormality_defect()
            .max(self.v.orthonormality_defect())
    }

    pub fn is_finite(&self) -> bool {
        self.u.is_finite() && self.s.is_finite() && self.v.is_finite()
    }
}
