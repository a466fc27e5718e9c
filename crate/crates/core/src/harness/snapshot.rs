use crate::error::{Error, Result};
use crate::harness::ExperimentConfig;
use crate::linalg::DenseMatrix;
use crate::lowrank::{lowrank_integrate_with, LowRankPair};
use crate::model::sample_initial;
use crate::splitting::{integrate_fullrank_with, HalfStepFlows, SplittingSetup};

/// Displacement fields of both methods at the requested times.
#[derive(Clone, Debug)]
pub struct SnapshotSeries {
    pub times: Vec<f64>,
    pub rank: usize,
    pub fullrank: Vec<DenseMatrix>,
    pub lowrank: Vec<DenseMatrix>,
}

impl SnapshotSeries {
    /// `(min, max)` over every frame of both methods.
    pub fn value_range(&self) -> (f64, f64) {
        self.fullrank
            .iter()
            .chain(&self.lowrank)
            .flat_map(|m| m.as_slice().iter().copied())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }
}

/// Runs the full-rank and the low-rank scheme with the first `M` and the
/// first rank of `config`, recording `P` at each of `times`.
pub fn snapshot_series(config: &ExperimentConfig, times: &[f64]) -> Result<SnapshotSeries> {
    config.validate()?;
    let time = config.time_grid(config.m_list[0])?;
    let indices = times
        .iter()
        .map(|&t| time.index_of(t).ok_or(Error::TimeNotOnGrid(t)))
        .collect::<Result<Vec<_>>>()?;
    let mut setup = SplittingSetup::new(config.grid, config.params, config.nonlinear.clone());
    setup.fn_substeps = config.fn_substeps;
    let flows = HalfStepFlows::build(&config.grid, &config.params, time.tau())?;
    let state0 = sample_initial(&config.grid, &config.preset);
    let rank = config.ranks[0];
    let empty = DenseMatrix::zeros(0, 0);

    let mut fullrank = vec![empty.clone(); times.len()];
    integrate_fullrank_with(&state0, &setup, &time, &flows, |k, _, s| {
        for (slot, _) in indices.iter().enumerate().filter(|(_, &i)| i == k) {
            fullrank[slot] = s.p.clone();
        }
    })?;

    let mut lowrank = vec![empty; times.len()];
    let pair0 = LowRankPair::from_state(&state0, rank, rank)?;
    lowrank_integrate_with(&pair0, &setup, &time, &flows, |k, _, pair| {
        let wanted: Vec<usize> = indices.iter().enumerate().filter(|(_, &i)| i == k).map(|(s, _)| s).collect();
        if !wanted.is_empty() {
            let p = pair.p.to_dense();
            for slot in wanted {
                lowrank[slot] = p.clone();
            }
        }
    })?;

    Ok(SnapshotSeries {
        times: times.to_vec(),
        rank,
        fullrank,
        lowrank,
    })
}
