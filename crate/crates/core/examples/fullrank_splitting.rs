//! Full-rank Strang splitting on the smooth example: halving the step
//! should cut the self-convergence error by about four.

use dlrwave::linalg::rel_diff;
use dlrwave::model::{sample_initial, GridSpec, Preset, TimeGrid};
use dlrwave::splitting::{integrate_fullrank, SplittingSetup};

fn main() -> dlrwave::Result<()> {
    let preset = Preset::Example1;
    let d = preset.defaults();
    let grid = GridSpec::square(d.bounds, 64)?;
    let setup = SplittingSetup::new(grid, d.params, d.nonlinear);
    let state0 = sample_initial(&grid, &preset);

    let solve = |steps| {
        let time = TimeGrid::new(d.t_final, steps)?;
        integrate_fullrank(&state0, &setup, &time, |_, _, _| {}).map(|s| s.p)
    };
    let reference = solve(1280)?;
    let mut prev: Option<f64> = None;
    for steps in [10, 20, 40, 80] {
        let err = rel_diff(&solve(steps)?, &reference);
        match prev {
            Some(e) => println!("M = {steps:3}: relerr {err:.4e}, rate {:.3}", (e / err).log2()),
            None => println!("M = {steps:3}: relerr {err:.4e}"),
        }
        prev = Some(err);
    }
    Ok(())
}
