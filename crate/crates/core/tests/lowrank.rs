mod common;

use common::{equivalence_instance, oracle_singular_values, random_factor, random_matrix, random_orthonormal, random_pair, rng};
use dlrwave::linalg::{rel_diff, truncated_svd, DenseMatrix, LowRankFactor};
use dlrwave::lowrank::{
    dlr_fl, dlr_retruncate, left_flow_sums, lowrank_flow_f, right_flow_sums, lowrank_flow_x, lowrank_flow_y, lowrank_strang_step,
    FactoredSum, LowRankPair,
};
use dlrwave::model::{GridSpec, Laplacian1d, ModelParams, NonlinearPair, PairState, ScalarMap};
use dlrwave::splitting::{build_flow, flow_f, flow_x, strang_step, Direction, HalfStepFlows};

fn params() -> ModelParams {
    ModelParams::new(1.0, 0.1, 0.001, 1.0, [0.98, 0.01, 0.01]).unwrap()
}

#[test]
fn factored_and_dense_paths_agree() {
    for seed in 0..40 {
        let d = equivalence_instance(seed);
        assert!(d.iter().all(|&e| e < 1e-11), "seed {seed}: {d:?}");
    }
}

#[test]
fn retruncate_reproduces_exact_rank_input() {
    let mut r = rng(11);
    let (m, n, k) = (30, 20, 5);
    let exact = random_factor(&mut r, m, n, k);
    let dense = exact.to_dense();
    // any basis spanning the row space works
    let v0 = exact.v.dot(&random_orthonormal(&mut r, k, k));
    let sum = FactoredSum::new(m, n)
        .with_term(exact.u.clone(), exact.s.clone(), exact.v.clone())
        .unwrap();
    let out = dlr_retruncate(&v0, &sum).unwrap();
    assert!(rel_diff(&out.to_dense(), &dense) < 1e-11);
    assert!(out.orthonormality_defect() < 1e-12);
}

#[test]
fn retruncate_of_diagonal_matches_svd_oracle() {
    let delta = DenseMatrix::from_diag(&[3.0, 1.0]);
    let e1 = DenseMatrix::from_rows(&[&[1.0], &[0.0]]);
    let out = dlr_retruncate(&e1, &delta).unwrap();
    assert!((out.s[(0, 0)].abs() - oracle_singular_values(&delta)[0]).abs() < 1e-15);
    let best = DenseMatrix::from_rows(&[&[3.0, 0.0], &[0.0, 0.0]]);
    assert!(rel_diff(&out.to_dense(), &best) < 1e-15);
}

#[test]
fn flow_x_at_sufficient_rank_matches_truncated_dense_flow() {
    let mut r = rng(5);
    let grid = GridSpec::square([0.0, 1.0, 0.0, 1.0], 24).unwrap();
    let fx = build_flow(Direction::X, 0.01, &params(), &Laplacian1d::along_x(&grid)).unwrap();
    let pair = random_pair(&mut r, 23, 23, 3, 3);
    let out = lowrank_flow_x(&pair, &fx).unwrap();
    let dense = flow_x(&pair.to_state(), &fx).unwrap();
    // the exact output has rank ≤ 6, so projecting onto rank 3 errs by at
    // most the best approximation plus the projector-splitting defect
    let best = truncated_svd(&dense.p, 3).unwrap().factor.to_dense();
    let floor = dense.p.sub(&best).frobenius_norm();
    let got = dense.p.sub(&out.p.to_dense()).frobenius_norm();
    assert!(got <= 1.5 * floor + 1e-10 * dense.p.frobenius_norm(), "{got} vs {floor}");
    assert_eq!(left_flow_sums(&pair, &fx).unwrap().0.max_rank(), 6);
}

#[test]
fn y_flow_increments_are_transposed_x_flow_increments() {
    let mut r = rng(9);
    let lap = Laplacian1d::new(12, 1.0 / 13.0).unwrap();
    let p = ModelParams::new(0.8, 0.2, 0.01, 0.5, [0.4, 0.35, 0.25]).unwrap();
    let swapped = ModelParams { omega: [0.35, 0.4, 0.25], ..p };
    let pair = random_pair(&mut r, 12, 12, 4, 2);
    let t = |f: &LowRankFactor| LowRankFactor::new(f.v.clone(), f.s.transpose(), f.u.clone()).unwrap();
    let pair_t = LowRankPair::new(t(&pair.p), t(&pair.q)).unwrap();
    let (y1, y2) = right_flow_sums(&pair, &build_flow(Direction::Y, 0.03, &p, &lap).unwrap()).unwrap();
    let (x1, x2) = left_flow_sums(&pair_t, &build_flow(Direction::X, 0.03, &swapped, &lap).unwrap()).unwrap();
    assert!(rel_diff(&y1.to_dense(), &x1.to_dense().transpose()) < 1e-13);
    assert!(rel_diff(&y2.to_dense(), &x2.to_dense().transpose()) < 1e-13);
    // with Q̃ inside the bases of P̃ the increment has rank r_P, so the
    // retruncation is exact
    let q_in_p = LowRankFactor::new(pair.p.u.block(0, 0, 12, 2), pair.q.s.clone(), pair.p.v.block(0, 0, 12, 2)).unwrap();
    let inside = LowRankPair::new(pair.p.clone(), q_in_p).unwrap();
    let fy = build_flow(Direction::Y, 0.03, &p, &lap).unwrap();
    let out = lowrank_flow_y(&inside, &fy).unwrap();
    let dense = dlrwave::splitting::flow_y(&inside.to_state(), &fy).unwrap();
    assert!(rel_diff(&out.p.to_dense(), &dense.p) < 1e-11);
}

#[test]
fn fl_with_update_inside_the_bases_is_exact() {
    let mut r = rng(21);
    let p = random_factor(&mut r, 15, 11, 4);
    let q = LowRankFactor::new(p.u.clone(), random_matrix(&mut r, 4, 4), p.v.clone()).unwrap();
    let out = dlr_fl(&p, &q, 0.05, 0.5).unwrap();
    let want = p.to_dense().add(&q.to_dense().scaled(0.025));
    assert!(rel_diff(&out.to_dense(), &want) < 1e-12);
}

#[test]
fn nonlinear_flow_at_full_rank_matches_dense_flow() {
    let mut r = rng(2);
    let (m, n) = (7, 5);
    let state = PairState::new(random_matrix(&mut r, m, n), random_matrix(&mut r, m, n)).unwrap();
    let pair = LowRankPair::from_state(&state, n, n).unwrap();
    let nl = NonlinearPair::new(ScalarMap::Square, ScalarMap::Zero);
    let lr = lowrank_flow_f(&pair, 0.05, 0.3, &nl, 1).unwrap().to_state();
    let full = flow_f(&pair.to_state(), 0.05, 0.3, &nl, 1).unwrap();
    assert!(rel_diff(&lr.p, &full.p) < 1e-11);
    assert!(rel_diff(&lr.q, &full.q) < 1e-11);
}

#[test]
fn strang_step_invariants() {
    let mut r = rng(4);
    let grid = GridSpec::square([0.0, 1.0, 0.0, 1.0], 20).unwrap();
    let pair = random_pair(&mut r, 19, 19, 5, 3);
    let nl = NonlinearPair::new(ScalarMap::Square, ScalarMap::Sin);
    let flows = HalfStepFlows::build(&grid, &params(), 0.01).unwrap();
    let out = lowrank_strang_step(&pair, &flows, 0.01, &params(), &nl, 2).unwrap();
    assert_eq!(out.ranks(), (5, 3));
    assert!(out.orthonormality_defect() < 1e-10);
    // a zero step leaves the state alone
    let flows0 = HalfStepFlows::build(&grid, &params(), 0.0).unwrap();
    let same = lowrank_strang_step(&pair, &flows0, 0.0, &params(), &nl, 1).unwrap();
    assert!(rel_diff(&same.p.to_dense(), &pair.p.to_dense()) < 1e-13);
    assert!(rel_diff(&same.q.to_dense(), &pair.q.to_dense()) < 1e-13);
    // mismatched flows are refused
    assert!(lowrank_strang_step(&pair, &flows, 0.02, &params(), &nl, 1).is_err());
}

#[test]
fn full_rank_linear_strang_matches_dense() {
    let mut r = rng(8);
    let grid = GridSpec::square([0.0, 1.0, 0.0, 1.0], 9).unwrap();
    let state = PairState::new(random_matrix(&mut r, 8, 8), random_matrix(&mut r, 8, 8)).unwrap();
    let pair = LowRankPair::from_state(&state, 8, 8).unwrap();
    let flows = HalfStepFlows::build(&grid, &params(), 0.01).unwrap();
    let nl = NonlinearPair::zero();
    let lr = lowrank_strang_step(&pair, &flows, 0.01, &params(), &nl, 1).unwrap().to_state();
    let full = strang_step(&state, &flows, 0.01, &params(), &nl, 1).unwrap();
    assert!(rel_diff(&lr.p, &full.p) < 1e-10);
    assert!(rel_diff(&lr.q, &full.q) < 1e-10);
}
