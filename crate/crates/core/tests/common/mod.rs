//! Helpers and independent oracles shared by the integration tests.
#![allow(dead_code)]

use dlrwave::linalg::{thin_qr, DenseMatrix, LowRankFactor};
use dlrwave::lowrank::LowRankPair;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut impl Rng, m: usize, n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(m, n, |_, _| rng.gen_range(-1.0..1.0))
}

pub fn random_orthonormal(rng: &mut impl Rng, m: usize, r: usize) -> DenseMatrix {
    thin_qr(&random_matrix(rng, m, r)).unwrap().q
}

/// Random factor whose core has singular values spread over `[0.1, 1]`.
pub fn random_factor(rng: &mut impl Rng, m: usize, n: usize, r: usize) -> LowRankFactor {
    let u = random_orthonormal(rng, m, r);
    let v = random_orthonormal(rng, n, r);
    let a = random_orthonormal(rng, r, r);
    let b = random_orthonormal(rng, r, r);
    let d = DenseMatrix::from_diag(&(0..r).map(|k| 1.0 - 0.9 * k as f64 / r.max(2) as f64).collect::<Vec<_>>());
    LowRankFactor::new(u, a.dot(&d).dot_t(&b), v).unwrap()
}

pub fn random_pair(rng: &mut impl Rng, m: usize, n: usize, rp: usize, rq: usize) -> LowRankPair {
    let p = random_factor(rng, m, n, rp);
    let q = random_factor(rng, m, n, rq);
    LowRankPair::new(p, q).unwrap()
}

/// Singular values from nalgebra's bidiagonal SVD, sorted descending.
pub fn oracle_singular_values(a: &DenseMatrix) -> Vec<f64> {
    let m = nalgebra::DMatrix::from_row_slice(a.rows(), a.cols(), a.as_slice());
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

/// Solution of `c'' + a c' + b c = 0`, `c(0) = c0`, `c'(0) = v0`.
pub fn damped_mode(a: f64, b: f64, c0: f64, v0: f64, t: f64) -> f64 {
    let disc = a * a - 4.0 * b;
    let decay = (-0.5 * a * t).exp();
    if disc < 0.0 {
        let w = 0.5 * (-disc).sqrt();
        decay * (c0 * (w * t).cos() + (v0 + 0.5 * a * c0) / w * (w * t).sin())
    } else if disc > 0.0 {
        let s = 0.5 * disc.sqrt();
        let (l1, l2) = (-0.5 * a + s, -0.5 * a - s);
        let k1 = (v0 - l2 * c0) / (l1 - l2);
        let k2 = c0 - k1;
        k1 * (l1 * t).exp() + k2 * (l2 * t).exp()
    } else {
        decay * (c0 + (v0 + 0.5 * a * c0) * t)
    }
}

/// Derivative of [`damped_mode`] in `t`, by the same closed form.
pub fn damped_mode_rate(a: f64, b: f64, c0: f64, v0: f64, t: f64) -> f64 {
    // c' solves the same equation with c'(0) = v0, c''(0) = −a v0 − b c0
    damped_mode(a, b, v0, -a * v0 - b * c0, t)
}

/// Relative differences between the factored and the densified paths of
/// `lowrank_flow_x`, `lowrank_flow_y`, `dlr_fl` and `dlr_fn` (g = 0) on one
/// random instance with dimensions up to 64 and ranks up to 8.
pub fn equivalence_instance(seed: u64) -> [f64; 4] {
    use dlrwave::lowrank::dense::{dense_dlr_fl, dense_dlr_fn_g0, dense_flow_x, dense_flow_y};
    use dlrwave::lowrank::{dlr_fl, dlr_fn, lowrank_flow_x, lowrank_flow_y};
    use dlrwave::model::{NonlinearPair, ScalarMap};
    use dlrwave::splitting::{Direction, FlowOperator};

    let mut r = rng(seed);
    let m = r.gen_range(8..=64);
    let n = r.gen_range(8..=64);
    let rp = r.gen_range(1..=8);
    let rq = r.gen_range(1..=8);
    let pair = random_pair(&mut r, m, n, rp, rq);
    let flow = |r: &mut ChaCha8Rng, dir, k| {
        // near-identity blocks keep Δ well conditioned, like a real flow
        let blk = |r: &mut ChaCha8Rng, diag: f64| {
            random_matrix(r, k, k).scaled(0.3 / (k as f64).sqrt()).add(&DenseMatrix::identity(k).scaled(diag))
        };
        FlowOperator {
            direction: dir,
            step: 0.0,
            b11: blk(r, 1.0),
            b12: blk(r, 0.0),
            b21: blk(r, 0.0),
            b22: blk(r, 1.0),
        }
    };
    let fx = flow(&mut r, Direction::X, m);
    let fy = flow(&mut r, Direction::Y, n);
    let d = |a: &LowRankPair, b: &LowRankPair| {
        dlrwave::linalg::rel_diff(&a.p.to_dense(), &b.p.to_dense())
            .max(dlrwave::linalg::rel_diff(&a.q.to_dense(), &b.q.to_dense()))
    };
    let ex = d(&lowrank_flow_x(&pair, &fx).unwrap(), &dense_flow_x(&pair, &fx).unwrap());
    let ey = d(&lowrank_flow_y(&pair, &fy).unwrap(), &dense_flow_y(&pair, &fy).unwrap());
    let tau = r.gen_range(0.001..0.1);
    let omega = r.gen_range(0.01..1.0);
    let efl = dlrwave::linalg::rel_diff(
        &dlr_fl(&pair.p, &pair.q, tau, omega).unwrap().to_dense(),
        &dense_dlr_fl(&pair.p, &pair.q, tau, omega).unwrap().to_dense(),
    );
    let f = [ScalarMap::Square, ScalarMap::Cube, ScalarMap::Sin, ScalarMap::Logistic][r.gen_range(0..4)].clone();
    let nl = NonlinearPair::new(f, ScalarMap::Zero);
    let efn = dlrwave::linalg::rel_diff(
        &dlr_fn(&pair.p, &pair.q, &nl, tau, 1).unwrap().to_dense(),
        &dense_dlr_fn_g0(&pair.p, &pair.q, &nl, tau).unwrap().to_dense(),
    );
    [ex, ey, efl, efn]
}
