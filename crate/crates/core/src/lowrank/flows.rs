//! The low-rank subflows and their Strang composition.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LowRankFactor};
use crate::lowrank::{dlr_fl, dlr_fn, dlr_retruncate, FactoredSum, LowRankPair};
use crate::model::{ModelParams, NonlinearPair, TimeGrid};
use crate::splitting::{Direction, FlowOperator, HalfStepFlows, SplittingSetup};

fn check_direction(flow: &FlowOperator, want: Direction, order: usize, op: &'static str) -> Result<()> {
    if flow.direction != want {
        return Err(Error::InvalidParameter(format!(
            "{op} needs a {want:?} flow, got {:?}",
            flow.direction
        )));
    }
    if flow.order() != order {
        return Err(Error::Dimension {
            op,
            expected: (order, order),
            got: (flow.order(), flow.order()),
        });
    }
    Ok(())
}

/// The two factored blocks `[Δ₁; Δ₂] = B [P̃; Q̃]`, each of rank at most
/// `r_P + r_Q`.
pub fn left_flow_sums(pair: &LowRankPair, flow: &FlowOperator) -> Result<(FactoredSum, FactoredSum)> {
    let (m, n) = pair.shape();
    check_direction(flow, Direction::X, m, "lowrank_flow_x")?;
    let (p, q) = (&pair.p, &pair.q);
    let term = |b: &DenseMatrix, f: &LowRankFactor| (b.dot(&f.u), f.s.clone(), f.v.clone());
    let sum = |bp: &DenseMatrix, bq: &DenseMatrix| -> Result<FactoredSum> {
        let (l1, c1, r1) = term(bp, p);
        let (l2, c2, r2) = term(bq, q);
        FactoredSum::new(m, n).with_term(l1, c1, r1)?.with_term(l2, c2, r2)
    };
    Ok((sum(&flow.b11, &flow.b12)?, sum(&flow.b21, &flow.b22)?))
}

/// The two factored blocks `[Δ₁ Δ₂] = [P̃ Q̃] B`.
pub fn right_flow_sums(pair: &LowRankPair, flow: &FlowOperator) -> Result<(FactoredSum, FactoredSum)> {
    let (m, n) = pair.shape();
    check_direction(flow, Direction::Y, n, "lowrank_flow_y")?;
    let (p, q) = (&pair.p, &pair.q);
    // U S Vᵀ B = U S (Bᵀ V)ᵀ
    let term = |f: &LowRankFactor, b: &DenseMatrix| (f.u.clone(), f.s.clone(), b.t_dot(&f.v));
    let sum = |bp: &DenseMatrix, bq: &DenseMatrix| -> Result<FactoredSum> {
        let (l1, c1, r1) = term(p, bp);
        let (l2, c2, r2) = term(q, bq);
        FactoredSum::new(m, n).with_term(l1, c1, r1)?.with_term(l2, c2, r2)
    };
    Ok((sum(&flow.b11, &flow.b21)?, sum(&flow.b12, &flow.b22)?))
}

pub fn lowrank_flow_x(pair: &LowRankPair, flow: &FlowOperator) -> Result<LowRankPair> {
    let (d1, d2) = left_flow_sums(pair, flow)?;
    Ok(LowRankPair {
        p: dlr_retruncate(&pair.p.v, &d1)?,
        q: dlr_retruncate(&pair.q.v, &d2)?,
    })
}

pub fn lowrank_flow_y(pair: &LowRankPair, flow: &FlowOperator) -> Result<LowRankPair> {
    let (d1, d2) = right_flow_sums(pair, flow)?;
    Ok(LowRankPair {
        p: dlr_retruncate(&pair.p.v, &d1)?,
        q: dlr_retruncate(&pair.q.v, &d2)?,
    })
}

/// Kick over τ/2, drift over τ, kick over τ/2, all at fixed rank.
pub fn lowrank_flow_f(
    pair: &LowRankPair,
    tau: f64,
    omega3: f64,
    nl: &NonlinearPair,
    substeps: usize,
) -> Result<LowRankPair> {
    let q_half = dlr_fn(&pair.p, &pair.q, nl, 0.5 * tau, substeps)?;
    let p1 = dlr_fl(&pair.p, &q_half, tau, omega3)?;
    let q1 = dlr_fn(&p1, &q_half, nl, 0.5 * tau, substeps)?;
    Ok(LowRankPair { p: p1, q: q1 })
}

/// One step of the low-rank Strang scheme.
pub fn lowrank_strang_step(
    pair: &LowRankPair,
    flows: &HalfStepFlows,
    tau: f64,
    params: &ModelParams,
    nl: &NonlinearPair,
    fn_substeps: usize,
) -> Result<LowRankPair> {
    flows.check(tau)?;
    let s = lowrank_flow_x(pair, &flows.x)?;
    let s = lowrank_flow_y(&s, &flows.y)?;
    let s = lowrank_flow_f(&s, tau, params.omega[2], nl, fn_substeps)?;
    let s = lowrank_flow_y(&s, &flows.y)?;
    lowrank_flow_x(&s, &flows.x)
}

/// `M` low-rank steps; the observer sees `(k, t_k, pair)` for `k = 0..=M`.
pub fn lowrank_integrate(
    pair0: &LowRankPair,
    setup: &SplittingSetup,
    time: &TimeGrid,
    observer: impl FnMut(usize, f64, &LowRankPair),
) -> Result<LowRankPair> {
    let flows = HalfStepFlows::build(&setup.grid, &setup.params, time.tau())?;
    lowrank_integrate_with(pair0, setup, time, &flows, observer)
}

pub fn lowrank_integrate_with(
    pair0: &LowRankPair,
    setup: &SplittingSetup,
    time: &TimeGrid,
    flows: &HalfStepFlows,
    mut observer: impl FnMut(usize, f64, &LowRankPair),
) -> Result<LowRankPair> {
    let tau = time.tau();
    let mut pair = pair0.clone();
    observer(0, 0.0, &pair);
    for k in 1..=time.steps {
        pair = lowrank_strang_step(&pair, flows, tau, &setup.params, &setup.nonlinear, setup.fn_substeps)?;
        if !pair.is_finite() {
            return Err(Error::BlowUp { step: k, time: time.t(k) });
        }
        observer(k, time.t(k), &pair);
    }
    Ok(pair)
}
