use std::time::{Duration, Instant};

use crate::error::Result;
use crate::harness::{observed_rate, relerr, ExperimentConfig};
use crate::linalg::DenseMatrix;
use crate::lowrank::{lowrank_integrate_with, LowRankPair};
use crate::model::sample_initial;
use crate::splitting::{FlowCache, SplittingSetup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellStatus {
    Ok,
    BlowUp,
}

impl CellStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CellStatus::Ok => "ok",
            CellStatus::BlowUp => "blowup",
        }
    }
}

/// One `(rank, M)` entry of a convergence table.
#[derive(Clone, Debug)]
pub struct ConvergenceCell {
    pub rank: usize,
    pub steps: usize,
    pub tau: f64,
    /// `NaN` when the run blew up.
    pub relerr: f64,
    /// Order against the previous `M` of the same rank.
    pub rate: Option<f64>,
    pub status: CellStatus,
    pub wall_time: Duration,
}

/// Runs the low-rank scheme for every rank and every `M` and compares the
/// final `P̃` against `reference`. Cells are ordered by rank, then `M`.
///
/// A blow-up marks its cell and the run continues; other errors abort.
pub fn convergence_table(config: &ExperimentConfig, reference: &DenseMatrix) -> Result<Vec<ConvergenceCell>> {
    convergence_table_with(config, reference, |_| {})
}

/// Same as [`convergence_table`], reporting each finished cell.
pub fn convergence_table_with(
    config: &ExperimentConfig,
    reference: &DenseMatrix,
    mut on_cell: impl FnMut(&ConvergenceCell),
) -> Result<Vec<ConvergenceCell>> {
    config.validate()?;
    let mut setup = SplittingSetup::new(config.grid, config.params, config.nonlinear.clone());
    setup.fn_substeps = config.fn_substeps;
    let state0 = sample_initial(&config.grid, &config.preset);
    let flows = FlowCache::new();

    let mut cells = Vec::with_capacity(config.ranks.len() * config.m_list.len());
    for rank in config.sorted_ranks() {
        let pair0 = LowRankPair::from_state(&state0, rank, rank)?;
        let mut prev: Option<(f64, f64)> = None;
        for &steps in &config.m_list {
            let time = config.time_grid(steps)?;
            let half = flows.half_step_flows(&config.grid, &config.params, time.tau())?;
            let start = Instant::now();
            let outcome = lowrank_integrate_with(&pair0, &setup, &time, &half, |_, _, _| {});
            let (err, status) = match outcome {
                Ok(pair) => (relerr(&pair.p.to_dense(), reference)?, CellStatus::Ok),
                Err(e) if e.is_blow_up() => (f64::NAN, CellStatus::BlowUp),
                Err(e) => return Err(e),
            };
            let rate = match prev {
                Some((e1, t1)) if status == CellStatus::Ok && e1.is_finite() => {
                    observed_rate(e1, err, t1, time.tau()).ok()
                }
                _ => None,
            };
            let cell = ConvergenceCell {
                rank,
                steps,
                tau: time.tau(),
                relerr: err,
                rate,
                status,
                wall_time: start.elapsed(),
            };
            on_cell(&cell);
            cells.push(cell);
            prev = Some((err, time.tau()));
        }
    }
    Ok(cells)
}
