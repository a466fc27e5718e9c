//! Flow of the nonlinear subproblem `P' = ω₃ Q`, `Q' = F(P, Q)`, itself
//! Strang-split into a drift (`Q` frozen) and a kick (`P` frozen).

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::model::{NonlinearPair, PairState};

/// `Q' = f(P) + g(Q)` over `[0, h]` with `P` held fixed.
///
/// Exact when `g ≡ 0`; otherwise `substeps` classical RK4 steps.
pub fn kick(p: &DenseMatrix, q: &DenseMatrix, h: f64, nl: &NonlinearPair, substeps: usize) -> DenseMatrix {
    let fp = nl.f.apply(p);
    let mut out = q.clone();
    if nl.g_is_zero() {
        out.axpy(h, &fp);
        return out;
    }
    let substeps = substeps.max(1);
    let dt = h / substeps as f64;
    let rhs = |y: &DenseMatrix| {
        let mut k = nl.g.apply(y);
        k.axpy(1.0, &fp);
        k
    };
    for _ in 0..substeps {
        out = rk4_step(&out, dt, rhs);
    }
    out
}

/// One classical fourth-order Runge–Kutta step for an autonomous matrix ODE.
pub fn rk4_step(y: &DenseMatrix, dt: f64, rhs: impl Fn(&DenseMatrix) -> DenseMatrix) -> DenseMatrix {
    let k1 = rhs(y);
    let mut y2 = y.clone();
    y2.axpy(0.5 * dt, &k1);
    let k2 = rhs(&y2);
    let mut y3 = y.clone();
    y3.axpy(0.5 * dt, &k2);
    let k3 = rhs(&y3);
    let mut y4 = y.clone();
    y4.axpy(dt, &k3);
    let k4 = rhs(&y4);

    let mut out = y.clone();
    out.axpy(dt / 6.0, &k1);
    out.axpy(dt / 3.0, &k2);
    out.axpy(dt / 3.0, &k3);
    out.axpy(dt / 6.0, &k4);
    out
}

/// Kick over τ/2, drift `P ← P + τω₃Q` over τ, kick over τ/2.
pub fn flow_f(state: &PairState, tau: f64, omega3: f64, nl: &NonlinearPair, substeps: usize) -> Result<PairState> {
    if state.p.shape() != state.q.shape() {
        return Err(Error::Dimension {
            op: "flow_f",
            expected: state.p.shape(),
            got: state.q.shape(),
        });
    }
    let q_half = kick(&state.p, &state.q, 0.5 * tau, nl, substeps);
    let mut p = state.p.clone();
    p.axpy(tau * omega3, &q_half);
    let q = kick(&p, &q_half, 0.5 * tau, nl, substeps);
    Ok(PairState { p, q })
}
