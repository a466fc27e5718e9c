use crate::error::{Error, Result};
use crate::linalg::{truncated_svd, LowRankFactor};
use crate::model::PairState;

/// Low-rank displacement `P̃ = U S Vᵀ` and velocity `Q̃ = R Σ Wᵀ`.
#[derive(Clone, Debug)]
pub struct LowRankPair {
    pub p: LowRankFactor,
    pub q: LowRankFactor,
}

impl LowRankPair {
    pub fn new(p: LowRankFactor, q: LowRankFactor) -> Result<Self> {
        if p.shape() != q.shape() {
            return Err(Error::Dimension {
                op: "LowRankPair::new",
                expected: p.shape(),
                got: q.shape(),
            });
        }
        Ok(LowRankPair { p, q })
    }

    /// Best rank-`r_p` / rank-`r_q` approximations of a dense state.
    pub fn from_state(state: &PairState, r_p: usize, r_q: usize) -> Result<Self> {
        Ok(LowRankPair {
            p: truncated_svd(&state.p, r_p)?.factor,
            q: truncated_svd(&state.q, r_q)?.factor,
        })
    }

    pub fn ranks(&self) -> (usize, usize) {
        (self.p.rank(), self.q.rank())
    }

    pub fn shape(&self) -> (usize, usize) {
        self.p.shape()
    }

    pub fn to_state(&self) -> PairState {
        PairState {
            p: self.p.to_dense(),
            q: self.q.to_dense(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.p.is_finite() && self.q.is_finite()
    }

    /// Largest orthonormality defect over `U, V, R, W`.
    pub fn orthonormality_defect(&self) -> f64 {
        self.p.orthonormality_defect().max(self.q.orthonormality_defect())
    }
}
