//! A single sine mode under the linear damped equation stays rank one, so
//! the rank-1 integrator can be compared with the scalar ODE it reduces to.

use std::f64::consts::PI;

use dlrwave::lowrank::{lowrank_integrate, LowRankPair};
use dlrwave::model::{sample_initial, GridSpec, ModelParams, NonlinearPair, Preset, TimeGrid};
use dlrwave::splitting::{exp2x2, SplittingSetup};

fn main() -> dlrwave::Result<()> {
    let n = 64;
    let grid = GridSpec::square([0.0, 1.0, 0.0, 1.0], n)?;
    let params = ModelParams::new(1.0, 0.01, 0.1, 2.0, [0.5, 0.3, 0.2])?;
    let setup = SplittingSetup::new(grid, params, NonlinearPair::zero());
    let preset = Preset::custom(|x, y| (2.0 * PI * x).sin() * (PI * y).sin(), |_, _| 0.0);
    let state0 = sample_initial(&grid, &preset);
    let pair0 = LowRankPair::from_state(&state0, 1, 1)?;

    // c'' + a c' + b c = 0 for the amplitude, with the discrete eigenvalues
    let h = grid.hx();
    let lam = |k: f64| 4.0 / (h * h) * (k * PI * h / 2.0).sin().powi(2);
    let mu = lam(2.0) + lam(1.0);
    let (a, b) = (params.gamma + params.beta * mu, params.delta + params.alpha * mu);
    let t_final = 0.5;
    let amp = exp2x2([[0.0, 1.0], [-b, -a]], t_final)[0][0];

    for steps in [25, 50, 100, 200] {
        let time = TimeGrid::new(t_final, steps)?;
        let out = lowrank_integrate(&pair0, &setup, &time, |_, _, _| {})?;
        let err = out.p.to_dense().sub(&state0.p.scaled(amp)).frobenius_norm() / state0.p.frobenius_norm();
        println!("M = {steps:3}: rank-1 error vs exact amplitude {err:.3e}");
    }
    Ok(())
}
