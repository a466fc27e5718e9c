//! Five-point finite differences on the interior nodes.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::model::{apply_nonlinear, GridSpec, ModelParams, NonlinearPair, Preset};

/// `(1/h²) tridiag(−1, 2, −1)` of order `n`.
pub fn build_laplacian_1d(n: usize, h: f64) -> Result<DenseMatrix> {
    Laplacian1d::new(n, h).map(|l| l.matrix())
}

/// The 1D Dirichlet Laplacian together with its closed-form sine
/// eigenbasis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Laplacian1d {
    pub n: usize,
    pub h: f64,
}

impl Laplacian1d {
    pub fn new(n: usize, h: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Laplacian order must be at least 1".into()));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidParameter("mesh width must be positive".into()));
        }
        Ok(Laplacian1d { n, h })
    }

    /// x-direction operator of a grid.
    pub fn along_x(grid: &GridSpec) -> Self {
        Laplacian1d {
            n: grid.nx - 1,
            h: grid.hx(),
        }
    }

    pub fn along_y(grid: &GridSpec) -> Self {
        Laplacian1d {
            n: grid.ny - 1,
            h: grid.hy(),
        }
    }

    pub fn matrix(&self) -> DenseMatrix {
        let c = 1.0 / (self.h * self.h);
        DenseMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                2.0 * c
            } else if i.abs_diff(j) == 1 {
                -c
            } else {
                0.0
            }
        })
    }

    /// `μ_k = (4/h²) sin²(kπ / (2(n+1)))`, `k = 1..=n`.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let s = (k as f64 * PI / (2.0 * (self.n + 1) as f64)).sin();
        4.0 * s * s / (self.h * self.h)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        (1..=self.n).map(|k| self.eigenvalue(k)).collect()
    }

    /// Orthonormal eigenvectors as columns:
    /// `S[i][k] = √(2/(n+1)) sin((i+1)(k+1)π / (n+1))`.
    pub fn eigenbasis(&self) -> DenseMatrix {
        let np1 = (self.n + 1) as f64;
        let c = (2.0 / np1).sqrt();
        DenseMatrix::from_fn(self.n, self.n, |i, k| {
            // reduce the integer product first so the sine argument stays small
            let m = ((i + 1) * (k + 1)) % (2 * (self.n + 1));
            c * (m as f64 * PI / np1).sin()
        })
    }
}

/// Displacement `P` and velocity `Q` on the interior nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct PairState {
    pub p: DenseMatrix,
    pub q: DenseMatrix,
}

impl PairState {
    pub fn new(p: DenseMatrix, q: DenseMatrix) -> Result<Self> {
        if p.shape() != q.shape() {
            return Err(Error::Dimension {
                op: "PairState::new",
                expected: p.shape(),
                got: q.shape(),
            });
        }
        Ok(PairState { p, q })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PairState {
            p: DenseMatrix::zeros(rows, cols),
            q: DenseMatrix::zeros(rows, cols),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.p.shape()
    }

    pub fn is_finite(&self) -> bool {
        self.p.is_finite() && self.q.is_finite()
    }
}

/// Samples `p` and `q` at the interior nodes: entry `[i−1][j−1]` holds the
/// value at `(x_i, y_j)`.
pub fn sample_initial(grid: &GridSpec, preset: &Preset) -> PairState {
    let (m, n) = grid.interior_shape();
    let mut p = DenseMatrix::zeros(m, n);
    let mut q = DenseMatrix::zeros(m, n);
    for i in 0..m {
        let x = grid.x(i + 1);
        for j in 0..n {
            let (pv, qv) = preset.eval(x, grid.y(j + 1));
            p[(i, j)] = pv;
            q[(i, j)] = qv;
        }
    }
    PairState { p, q }
}

/// Right-hand side of the first-order semi-discrete system:
/// `P' = Q`, `Q' = −α(A_x P + P A_y) − β(A_x Q + Q A_y) − δP − γQ + F(P, Q)`.
pub fn semidiscrete_rhs(
    state: &PairState,
    params: &ModelParams,
    a_x: &DenseMatrix,
    a_y: &DenseMatrix,
    nl: &NonlinearPair,
) -> Result<PairState> {
    let (m, n) = state.shape();
    if a_x.shape() != (m, m) {
        return Err(Error::Dimension {
            op: "semidiscrete_rhs (A_x)",
            expected: (m, m),
            got: a_x.shape(),
        });
    }
    if a_y.shape() != (n, n) {
        return Err(Error::Dimension {
            op: "semidiscrete_rhs (A_y)",
            expected: (n, n),
            got: a_y.shape(),
        });
    }
    let (p, q) = (&state.p, &state.q);
    let mut dq = apply_nonlinear(nl, p, q)?;
    let lap = |x: &DenseMatrix| a_x.dot(x).add(&x.dot(a_y));
    dq.axpy(-params.alpha, &lap(p));
    dq.axpy(-params.beta, &lap(q));
    dq.axpy(-params.delta, p);
    dq.axpy(-params.gamma, q);
    Ok(PairState { p: q.clone(), q: dq })
}
