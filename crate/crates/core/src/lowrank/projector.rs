//! Fixed-rank projector-splitting updates (K-, S- and L-steps closed by QR).

use crate::error::{Error, Result};
use crate::linalg::{gemm, thin_qr, DenseMatrix, LowRankFactor, Op};
use crate::lowrank::MatrixAction;
use crate::model::NonlinearPair;
use crate::splitting::rk4_step;

/// Rank-r approximation of `Δ` seeded by the previous right basis `V₀`:
/// `U₁ Ŝ = Δ V₀`, then `V₁ S₁ᵀ = Δᵀ U₁`. The intermediate `Ŝ` is discarded.
pub fn dlr_retruncate(v0: &DenseMatrix, delta: &impl MatrixAction) -> Result<LowRankFactor> {
    let (m, n) = delta.shape();
    let r = v0.cols();
    if v0.rows() != n {
        return Err(Error::Dimension {
            op: "dlr_retruncate",
            expected: (n, r),
            got: v0.shape(),
        });
    }
    if r == 0 || r > m.min(n) {
        return Err(Error::RankOutOfRange {
            op: "dlr_retruncate",
            rank: r,
            rows: m,
            cols: n,
        });
    }
    let u1 = thin_qr(&delta.apply(v0))?.q;
    let l = thin_qr(&delta.apply_t(&u1))?;
    Ok(LowRankFactor {
        u: u1,
        s: l.r.transpose(),
        v: l.q,
    })
}

fn check_pair(p: &LowRankFactor, q: &LowRankFactor, op: &'static str) -> Result<()> {
    if p.shape() != q.shape() {
        return Err(Error::Dimension {
            op,
            expected: p.shape(),
            got: q.shape(),
        });
    }
    Ok(())
}

/// Drift `P̃ ← P̃ + τω Q̃` projected back to rank `r_P`.
///
/// `ΔP = τω R Σ Wᵀ` is never densified.
pub fn dlr_fl(p: &LowRankFactor, q: &LowRankFactor, tau: f64, omega: f64) -> Result<LowRankFactor> {
    check_pair(p, q, "dlr_fl")?;
    let c = tau * omega;
    let core = q.s.scaled(c);

    // ΔK = ΔP V₀ = R (cΣ) (Wᵀ V₀)
    let delta_k = q.u.dot(&core.dot(&q.v.t_dot(&p.v)));
    let mut k1 = p.u.dot(&p.s);
    k1.axpy(1.0, &delta_k);
    let k_qr = thin_qr(&k1)?;
    let u1 = k_qr.q;

    let mut s_hat = k_qr.r;
    gemm(-1.0, &u1, Op::T, &delta_k, Op::N, 1.0, &mut s_hat);

    // L₁ = V₀ Ŝ₁ᵀ + ΔPᵀ U₁ = V₀ Ŝ₁ᵀ + W (cΣ)ᵀ (Rᵀ U₁)
    let mut l1 = DenseMatrix::zeros(p.v.rows(), p.rank());
    gemm(1.0, &p.v, Op::N, &s_hat, Op::T, 0.0, &mut l1);
    let proj = core.t_dot(&q.u.t_dot(&u1));
    gemm(1.0, &q.v, Op::N, &proj, Op::N, 1.0, &mut l1);
    let l_qr = thin_qr(&l1)?;

    Ok(LowRankFactor {
        u: u1,
        s: l_qr.r.transpose(),
        v: l_qr.q,
    })
}

/// Kick `Q̃' = F(P̃₀, Q̃)` over `[0, tau]` with `P̃₀` frozen, projected to
/// rank `r_Q`.
///
/// With `g ≡ 0` the vector field is constant and the K-, S- and L-steps
/// are explicit. Otherwise each substep ODE is integrated with
/// `substeps` RK4 steps, the S-step running backwards in the projected
/// direction: `Σ̂' = −R₁ᵀ F(P̃₀, R₁ Σ̂ W₀ᵀ) W₀`.
pub fn dlr_fn(
    p: &LowRankFactor,
    q: &LowRankFactor,
    nl: &NonlinearPair,
    tau: f64,
    substeps: usize,
) -> Result<LowRankFactor> {
    check_pair(p, q, "dlr_fn")?;
    let fp = nl.f.apply(&p.to_dense());
    let (r0, sigma0, w0) = (&q.u, &q.s, &q.v);

    if nl.g_is_zero() {
        // ΔQ = τ f(P̃₀); only ΔQ W₀ and ΔQᵀ R₁ are formed
        let mut delta_k = fp.dot(w0);
        delta_k.scale_mut(tau);
        let mut k1 = r0.dot(sigma0);
        k1.axpy(1.0, &delta_k);
        let k_qr = thin_qr(&k1)?;
        let r1 = k_qr.q;
        let mut s_hat = k_qr.r;
        gemm(-1.0, &r1, Op::T, &delta_k, Op::N, 1.0, &mut s_hat);

        let mut l1 = DenseMatrix::zeros(w0.rows(), q.rank());
        gemm(1.0, w0, Op::N, &s_hat, Op::T, 0.0, &mut l1);
        gemm(tau, &fp, Op::T, &r1, Op::N, 1.0, &mut l1);
        let l_qr = thin_qr(&l1)?;
        return Ok(LowRankFactor {
            u: r1,
            s: l_qr.r.transpose(),
            v: l_qr.q,
        });
    }

    let substeps = substeps.max(1);
    let dt = tau / substeps as f64;
    let field = |qd: &DenseMatrix| {
        let mut out = nl.g.apply(qd);
        out.axpy(1.0, &fp);
        out
    };
    let integrate = |y0: DenseMatrix, rhs: &dyn Fn(&DenseMatrix) -> DenseMatrix| {
        (0..substeps).fold(y0, |y, _| rk4_step(&y, dt, rhs))
    };

    // K' = F(P̃₀, K W₀ᵀ) W₀
    let k1 = integrate(r0.dot(sigma0), &|k: &DenseMatrix| field(&k.dot_t(w0)).dot(w0));
    let k_qr = thin_qr(&k1)?;
    let r1 = k_qr.q;

    // Σ̂' = −R₁ᵀ F(P̃₀, R₁ Σ̂ W₀ᵀ) W₀
    let s_hat = integrate(k_qr.r, &|s: &DenseMatrix| {
        let qd = r1.dot(s).dot_t(w0);
        let mut out = r1.t_dot(&field(&qd).dot(w0));
        out.scale_mut(-1.0);
        out
    });

    // L' = F(P̃₀, R₁ Lᵀ)ᵀ R₁
    let mut l0 = DenseMatrix::zeros(w0.rows(), q.rank());
    gemm(1.0, w0, Op::N, &s_hat, Op::T, 0.0, &mut l0);
    let l1 = integrate(l0, &|l: &DenseMatrix| field(&r1.dot_t(l)).t_dot(&r1));
    let l_qr = thin_qr(&l1)?;

    Ok(LowRankFactor {
        u: r1,
        s: l_qr.r.transpose(),
        v: l_qr.q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rel_diff;
    use crate::model::ScalarMap;

    fn e(n: usize, k: usize) -> DenseMatrix {
        DenseMatrix::from_fn(n, 1, |i, _| if i == k { 1.0 } else { 0.0 })
    }

    fn rank_one(n: usize, k: usize, s: f64) -> LowRankFactor {
        LowRankFactor::new(e(n, k), DenseMatrix::from_rows(&[&[s]]), e(n, k)).unwrap()
    }

    #[test]
    fn retruncate_picks_dominant_direction() {
        let delta = DenseMatrix::from_diag(&[3.0, 1.0]);
        let out = dlr_retruncate(&e(2, 0), &delta).unwrap();
        let want = DenseMatrix::from_rows(&[&[3.0, 0.0], &[0.0, 0.0]]);
        assert!(rel_diff(&out.to_dense(), &want) < 1e-15);
    }

    #[test]
    fn retruncate_rejects_bad_basis() {
        let delta = DenseMatrix::identity(3);
        assert!(dlr_retruncate(&DenseMatrix::zeros(2, 1), &delta).is_err());
        assert!(dlr_retruncate(&DenseMatrix::zeros(3, 4), &delta).is_err());
    }

    #[test]
    fn fl_rank_one_hand_case() {
        let p = rank_one(3, 0, 1.0);
        let out = dlr_fl(&p, &p, 1.0, 1.0).unwrap();
        assert!((out.s[(0, 0)].abs() - 2.0).abs() < 1e-15);
        let want = DenseMatrix::from_fn(3, 3, |i, j| if i == 0 && j == 0 { 2.0 } else { 0.0 });
        assert!(rel_diff(&out.to_dense(), &want) < 1e-15);
    }

    #[test]
    fn fl_zero_velocity_is_identity() {
        let u = thin_qr(&DenseMatrix::from_fn(5, 2, |i, j| ((i + 1) * (j + 2)) as f64 + (i * i) as f64)).unwrap().q;
        let v = thin_qr(&DenseMatrix::from_fn(4, 2, |i, j| (i as f64 - 1.5) * (j as f64 + 1.0) + j as f64)).unwrap().q;
        let p = LowRankFactor::new(u.clone(), DenseMatrix::from_rows(&[&[2.0, 0.3], &[0.0, 0.5]]), v.clone()).unwrap();
        let q = LowRankFactor::new(u, DenseMatrix::zeros(2, 2), v).unwrap();
        let out = dlr_fl(&p, &q, 0.1, 0.7).unwrap();
        assert!(rel_diff(&out.to_dense(), &p.to_dense()) < 1e-14);
    }

    #[test]
    fn fn_update_orthogonal_to_bases_is_invisible() {
        let nl = NonlinearPair::new(ScalarMap::Square, ScalarMap::Zero);
        let p = rank_one(3, 0, 1.0);
        let q = rank_one(3, 1, 1.0);
        let out = dlr_fn(&p, &q, &nl, 1.0, 1).unwrap();
        assert!(rel_diff(&out.to_dense(), &q.to_dense()) < 1e-15);
    }

    #[test]
    fn fn_zero_field_keeps_velocity() {
        let q = LowRankFactor::new(
            thin_qr(&DenseMatrix::from_fn(4, 2, |i, j| (i + j * j) as f64 + 0.5)).unwrap().q,
            DenseMatrix::from_rows(&[&[1.0, -0.2], &[0.4, 0.3]]),
            thin_qr(&DenseMatrix::from_fn(4, 2, |i, j| (i * j) as f64 - 1.0 + i as f64)).unwrap().q,
        )
        .unwrap();
        let p = rank_one(4, 2, 0.8);
        for nl in [NonlinearPair::zero(), NonlinearPair::new(ScalarMap::Zero, ScalarMap::Custom(std::sync::Arc::new(|_| 0.0)))] {
            let out = dlr_fn(&p, &q, &nl, 0.3, 2).unwrap();
            assert!(rel_diff(&out.to_dense(), &q.to_dense()) < 1e-14);
            assert!(out.orthonormality_defect() < 1e-13);
        }
    }

    #[test]
    fn fn_rk_branch_agrees_with_explicit_branch_for_constant_field() {
        // g = 0 forced through the ODE branch by a custom map that is zero
        let f = ScalarMap::Cube;
        let zero_custom = ScalarMap::Custom(std::sync::Arc::new(|_| 0.0));
        let p = LowRankFactor::new(
            thin_qr(&DenseMatrix::from_fn(6, 2, |i, j| ((i + 1) as f64).sin() + j as f64)).unwrap().q,
            DenseMatrix::from_rows(&[&[1.5, 0.0], &[0.2, 0.7]]),
            thin_qr(&DenseMatrix::from_fn(5, 2, |i, j| ((i * (j + 1)) as f64).cos())).unwrap().q,
        )
        .unwrap();
        let q = LowRankFactor::new(p.u.clone(), DenseMatrix::from_rows(&[&[0.3, 0.1], &[0.0, -0.4]]), p.v.clone()).unwrap();
        let a = dlr_fn(&p, &q, &NonlinearPair::new(f.clone(), ScalarMap::Zero), 0.05, 1).unwrap();
        let b = dlr_fn(&p, &q, &NonlinearPair::new(f, zero_custom), 0.05, 1).unwrap();
        assert!(rel_diff(&a.to_dense(), &b.to_dense()) < 1e-13);
    }
}
