//! Densified counterparts of the factored low-rank updates.
//!
//! Every product that the production path keeps factored is formed here as
//! a full matrix first. Used to cross-check the factored code.

use crate::error::Result;
use crate::linalg::{thin_qr, DenseMatrix, LowRankFactor};
use crate::lowrank::{dlr_retruncate, LowRankPair};
use crate::model::NonlinearPair;
use crate::splitting::FlowOperator;

pub fn dense_flow_x(pair: &LowRankPair, flow: &FlowOperator) -> Result<LowRankPair> {
    let (p, q) = (pair.p.to_dense(), pair.q.to_dense());
    let d1 = flow.b11.dot(&p).add(&flow.b12.dot(&q));
    let d2 = flow.b21.dot(&p).add(&flow.b22.dot(&q));
    Ok(LowRankPair {
        p: dlr_retruncate(&pair.p.v, &d1)?,
        q: dlr_retruncate(&pair.q.v, &d2)?,
    })
}

pub fn dense_flow_y(pair: &LowRankPair, flow: &FlowOperator) -> Result<LowRankPair> {
    let (p, q) = (pair.p.to_dense(), pair.q.to_dense());
    let d1 = p.dot(&flow.b11).add(&q.dot(&flow.b21));
    let d2 = p.dot(&flow.b12).add(&q.dot(&flow.b22));
    Ok(LowRankPair {
        p: dlr_retruncate(&pair.p.v, &d1)?,
        q: dlr_retruncate(&pair.q.v, &d2)?,
    })
}

pub fn dense_dlr_fl(p: &LowRankFactor, q: &LowRankFactor, tau: f64, omega: f64) -> Result<LowRankFactor> {
    let delta_p = q.to_dense().scaled(tau * omega);
    let delta_k = delta_p.dot(&p.v);
    let k1 = p.u.dot(&p.s).add(&delta_k);
    let k_qr = thin_qr(&k1)?;
    let s_hat = k_qr.r.sub(&k_qr.q.t_dot(&delta_k));
    let l1 = p.v.dot_t(&s_hat).add(&delta_p.t_dot(&k_qr.q));
    let l_qr = thin_qr(&l1)?;
    Ok(LowRankFactor {
        u: k_qr.q,
        s: l_qr.r.transpose(),
        v: l_qr.q,
    })
}

/// The `g ≡ 0` kick with `ΔQ = τ f(P̃₀)` materialized.
pub fn dense_dlr_fn_g0(p: &LowRankFactor, q: &LowRankFactor, nl: &NonlinearPair, tau: f64) -> Result<LowRankFactor> {
    let delta_q: DenseMatrix = nl.f.apply(&p.to_dense()).scaled(tau);
    let delta_k = delta_q.dot(&q.v);
    let k1 = q.u.dot(&q.s).add(&delta_k);
    let k_qr = thin_qr(&k1)?;
    let s_hat = k_qr.r.sub(&k_qr.q.t_dot(&delta_k));
    let l1 = q.v.dot_t(&s_hat).add(&delta_q.t_dot(&k_qr.q));
    let l_qr = thin_qr(&l1)?;
    Ok(LowRankFactor {
        u: k_qr.q,
        s: l_qr.r.transpose(),
        v: l_qr.q,
    })
}
