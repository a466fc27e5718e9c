//! Exact flows of the two linear subproblems.
//!
//! The x-subflow acts from the left on the stacked state `[P; Q]` with
//! generator `[[0, ω₁I], [−αA_x − δ/2 I, −βA_x − γ/2 I]]`; the y-subflow acts
//! from the right on `[P Q]` with `[[0, −αA_y − δ/2 I], [ω₂I, −βA_y − γ/2 I]]`.

use crate::error::{Error, Result};
use crate::linalg::{expm, gemm, DenseMatrix, Op};
use crate::model::{Laplacian1d, ModelParams, PairState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Y,
}

/// `B = exp(step · G)` split into its four n×n blocks.
#[derive(Clone, Debug)]
pub struct FlowOperator {
    pub direction: Direction,
    pub step: f64,
    pub b11: DenseMatrix,
    pub b12: DenseMatrix,
    pub b21: DenseMatrix,
    pub b22: DenseMatrix,
}

impl FlowOperator {
    pub fn order(&self) -> usize {
        self.b11.rows()
    }

    /// The assembled 2n×2n matrix.
    pub fn matrix(&self) -> DenseMatrix {
        let n = self.order();
        let mut b = DenseMatrix::zeros(2 * n, 2 * n);
        b.set_block(0, 0, &self.b11);
        b.set_block(0, n, &self.b12);
        b.set_block(n, 0, &self.b21);
        b.set_block(n, n, &self.b22);
        b
    }

    fn from_matrix(direction: Direction, step: f64, b: &DenseMatrix) -> Self {
        let n = b.rows() / 2;
        FlowOperator {
            direction,
            step,
            b11: b.block(0, 0, n, n),
            b12: b.block(0, n, n, n),
            b21: b.block(n, 0, n, n),
            b22: b.block(n, n, n, n),
        }
    }
}

/// The 2×2 generator restricted to one eigenmode `λ` of the Laplacian.
pub fn mode_generator(direction: Direction, params: &ModelParams, lambda: f64) -> [[f64; 2]; 2] {
    let stiff = -params.alpha * lambda - 0.5 * params.delta;
    let damp = -params.beta * lambda - 0.5 * params.gamma;
    match direction {
        Direction::X => [[0.0, params.omega[0]], [stiff, damp]],
        Direction::Y => [[0.0, stiff], [params.omega[1], damp]],
    }
}

/// Closed-form `exp(t · m)` for a real 2×2 matrix:
/// `e^s (cosh(q) I + sinh(q)/q · N)` with `s = t·tr(m)/2`, `N = t·m − sI`
/// and `N² = q² I` (trigonometric when `q²` is negative).
pub fn exp2x2(m: [[f64; 2]; 2], t: f64) -> [[f64; 2]; 2] {
    let a = t * m[0][0];
    let b = t * m[0][1];
    let c = t * m[1][0];
    let d = t * m[1][1];
    let s = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let disc = half_diff * half_diff + b * c;

    let (c0, c1) = if disc >= 0.0 {
        let q = disc.sqrt();
        if q < 0.5 {
            let es = s.exp();
            (es * q.cosh(), es * sinhc(q))
        } else {
            // split the exponentials so e^{s}·cosh(q) cannot overflow when s ≪ 0
            let ep = (s + q).exp();
            let em = (s - q).exp();
            (0.5 * (ep + em), 0.5 * (ep - em) / q)
        }
    } else {
        let w = (-disc).sqrt();
        let es = s.exp();
        (es * w.cos(), es * sinc(w))
    };

    [
        [c0 + c1 * half_diff, c1 * b],
        [c1 * c, c0 - c1 * half_diff],
    ]
}

fn sinhc(q: f64) -> f64 {
    if q < 1e-4 {
        1.0 + q * q / 6.0
    } else {
        q.sinh() / q
    }
}

fn sinc(w: f64) -> f64 {
    if w < 1e-4 {
        1.0 - w * w / 6.0
    } else {
        w.sin() / w
    }
}

/// Builds the flow through the sine eigenbasis of the Laplacian: every mode
/// evolves by an independent 2×2 exponential, and each block is reassembled
/// as `S diag(·) Sᵀ`.
pub fn build_flow(
    direction: Direction,
    step: f64,
    params: &ModelParams,
    lap: &Laplacian1d,
) -> Result<FlowOperator> {
    if !step.is_finite() {
        return Err(Error::InvalidParameter("flow step must be finite".into()));
    }
    let n = lap.n;
    let basis = lap.eigenbasis();
    let modes: Vec<[[f64; 2]; 2]> = lap
        .eigenvalues()
        .into_iter()
        .map(|l| exp2x2(mode_generator(direction, params, l), step))
        .collect();

    let block = |r: usize, c: usize| {
        let scaled = DenseMatrix::from_fn(n, n, |i, k| basis[(i, k)] * modes[k][r][c]);
        let mut out = DenseMatrix::zeros(n, n);
        gemm(1.0, &scaled, Op::N, &basis, Op::T, 0.0, &mut out);
        out
    };

    Ok(FlowOperator {
        direction,
        step,
        b11: block(0, 0),
        b12: block(0, 1),
        b21: block(1, 0),
        b22: block(1, 1),
    })
}

/// The 2n×2n generator for a given 1D operator `a`.
pub fn generator(direction: Direction, params: &ModelParams, a: &DenseMatrix) -> Result<DenseMatrix> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Dimension {
            op: "generator",
            expected: (n, n),
            got: a.shape(),
        });
    }
    let ident = DenseMatrix::identity(n);
    let mut stiff = a.scaled(-params.alpha);
    stiff.axpy(-0.5 * params.delta, &ident);
    let mut damp = a.scaled(-params.beta);
    damp.axpy(-0.5 * params.gamma, &ident);

    let mut g = DenseMatrix::zeros(2 * n, 2 * n);
    match direction {
        Direction::X => {
            g.set_block(0, n, &ident.scaled(params.omega[0]));
            g.set_block(n, 0, &stiff);
        }
        Direction::Y => {
            g.set_block(0, n, &stiff);
            g.set_block(n, 0, &ident.scaled(params.omega[1]));
        }
    }
    g.set_block(n, n, &damp);
    Ok(g)
}

/// Generic path: `expm(step · G)` for an arbitrary square operator.
pub fn build_flow_pade(
    direction: Direction,
    step: f64,
    params: &ModelParams,
    a: &DenseMatrix,
) -> Result<FlowOperator> {
    let g = generator(direction, params, a)?;
    let b = expm(&g.scaled(step))?;
    Ok(FlowOperator::from_matrix(direction, step, &b))
}

fn check_flow(state: &PairState, flow: &FlowOperator, want: Direction, op: &'static str) -> Result<()> {
    if flow.direction != want {
        return Err(Error::InvalidParameter(format!(
            "{op} needs a {want:?} flow, got {:?}",
            flow.direction
        )));
    }
    let (m, n) = state.shape();
    let expected = match want {
        Direction::X => m,
        Direction::Y => n,
    };
    if flow.order() != expected {
        return Err(Error::Dimension {
            op,
            expected: (expected, expected),
            got: (flow.order(), flow.order()),
        });
    }
    Ok(())
}

/// `[P₁; Q₁] = B [P; Q]`.
pub fn flow_x(state: &PairState, flow: &FlowOperator) -> Result<PairState> {
    check_flow(state, flow, Direction::X, "flow_x")?;
    let (m, n) = state.shape();
    let mut p = DenseMatrix::zeros(m, n);
    let mut q = DenseMatrix::zeros(m, n);
    gemm(1.0, &flow.b11, Op::N, &state.p, Op::N, 0.0, &mut p);
    gemm(1.0, &flow.b12, Op::N, &state.q, Op::N, 1.0, &mut p);
    gemm(1.0, &flow.b21, Op::N, &state.p, Op::N, 0.0, &mut q);
    gemm(1.0, &flow.b22, Op::N, &state.q, Op::N, 1.0, &mut q);
    Ok(PairState { p, q })
}

/// `[P₁ Q₁] = [P Q] B`.
pub fn flow_y(state: &PairState, flow: &FlowOperator) -> Result<PairState> {
    check_flow(state, flow, Direction::Y, "flow_y")?;
    let (m, n) = state.shape();
    let mut p = DenseMatrix::zeros(m, n);
    let mut q = DenseMatrix::zeros(m, n);
    gemm(1.0, &state.p, Op::N, &flow.b11, Op::N, 0.0, &mut p);
    gemm(1.0, &state.q, Op::N, &flow.b21, Op::N, 1.0, &mut p);
    gemm(1.0, &state.p, Op::N, &flow.b12, Op::N, 0.0, &mut q);
    gemm(1.0, &state.q, Op::N, &flow.b22, Op::N, 1.0, &mut q);
    Ok(PairState { p, q })
}
