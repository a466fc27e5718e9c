use crate::error::{Error, Result};
use crate::model::{GridSpec, ModelParams, NonlinearPair, Preset, TimeGrid};

/// How snapshot frames are normalized to gray levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangePolicy {
    /// One `(lo, hi)` shared by every frame of both methods.
    Series,
    /// Each frame uses its own extrema.
    Frame,
}

impl RangePolicy {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "series" => Ok(RangePolicy::Series),
            "frame" => Ok(RangePolicy::Frame),
            other => Err(Error::Validation(format!(
                "snapshot range must be `series` or `frame`, got `{other}`"
            ))),
        }
    }
}

/// A complete description of one experiment.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub preset: Preset,
    pub grid: GridSpec,
    pub t_final: f64,
    /// Step counts, strictly increasing.
    pub m_list: Vec<usize>,
    /// Ranks used for both `P̃` and `Q̃`.
    pub ranks: Vec<usize>,
    pub params: ModelParams,
    pub nonlinear: NonlinearPair,
    /// The reference runs `multiplier × max(m_list)` steps.
    pub reference_multiplier: usize,
    pub fn_substeps: usize,
    pub snapshot_times: Vec<f64>,
    pub snapshot_range: RangePolicy,
}

impl ExperimentConfig {
    /// The preset's own defaults at `n` intervals per direction.
    pub fn for_preset(preset: Preset, n: usize) -> Result<Self> {
        let cfg = Self::defaults(preset, n)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub(crate) fn defaults(preset: Preset, n: usize) -> Result<Self> {
        let d = preset.defaults();
        let (m_list, ranks) = match &preset {
            Preset::Example1 => (vec![20, 40, 80], vec![13]),
            Preset::Example2 => (vec![320, 640, 1280], vec![20]),
            Preset::Flower | Preset::Cardioid | Preset::Astroid => {
                let steps = (d.t_final / 0.01).round() as usize;
                (vec![steps], vec![d.snapshot_rank.unwrap_or(1)])
            }
            Preset::Custom { .. } => (vec![10, 20, 40], vec![1]),
        };
        // small test grids cannot hold the preset ranks
        let ranks = ranks.into_iter().map(|r| r.min(n.saturating_sub(1)).max(1)).collect();
        Ok(ExperimentConfig {
            grid: GridSpec::square(d.bounds, n)?,
            t_final: d.t_final,
            m_list,
            ranks,
            params: d.params,
            nonlinear: d.nonlinear,
            reference_multiplier: 16,
            fn_substeps: 1,
            snapshot_times: (0..=d.t_final.floor() as usize).map(|t| t as f64).collect(),
            snapshot_range: RangePolicy::Series,
            preset,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::Validation("final time must be positive".into()));
        }
        if self.m_list.is_empty() {
            return Err(Error::Validation("M list must not be empty".into()));
        }
        if self.m_list[0] == 0 || self.m_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Validation("M values must be positive and strictly increasing".into()));
        }
        if self.ranks.is_empty() || self.ranks.contains(&0) {
            return Err(Error::Validation("ranks must be positive".into()));
        }
        let mut sorted = self.ranks.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.ranks.len() {
            return Err(Error::Validation("ranks must be distinct".into()));
        }
        let (m, n) = self.grid.interior_shape();
        if let Some(&r) = self.ranks.iter().find(|&&r| r > m.min(n)) {
            return Err(Error::Validation(format!(
                "rank {r} exceeds the interior grid size {}",
                m.min(n)
            )));
        }
        if self.reference_multiplier == 0 {
            return Err(Error::Validation("reference multiplier must be positive".into()));
        }
        if self.fn_substeps == 0 {
            return Err(Error::Validation("fn_substeps must be positive".into()));
        }
        if let Some(t) = self.snapshot_times.iter().find(|t| !(t.is_finite() && **t >= 0.0 && **t <= self.t_final)) {
            return Err(Error::Validation(format!("snapshot time {t} outside [0, T]")));
        }
        Ok(())
    }

    pub fn time_grid(&self, steps: usize) -> Result<TimeGrid> {
        TimeGrid::new(self.t_final, steps)
    }

    pub fn reference_steps(&self) -> usize {
        self.reference_multiplier * self.m_list.iter().max().copied().unwrap_or(0)
    }

    /// Ranks in ascending order.
    pub fn sorted_ranks(&self) -> Vec<usize> {
        let mut r = self.ranks.clone();
        r.sort_unstable();
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_defaults_are_valid() {
        for name in Preset::NAMES {
            let cfg = ExperimentConfig::for_preset(Preset::from_name(name).unwrap(), 256).unwrap();
            assert!(cfg.reference_steps() > 0);
        }
        let cfg = ExperimentConfig::for_preset(Preset::Flower, 256).unwrap();
        assert_eq!(cfg.m_list, vec![300]);
        assert_eq!(cfg.snapshot_times, vec![0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn reference_policy_arithmetic() {
        let mut cfg = ExperimentConfig::for_preset(Preset::Example1, 32).unwrap();
        cfg.m_list = vec![20, 40, 80, 160, 320];
        assert_eq!(cfg.reference_steps(), 5120);
    }

    #[test]
    fn invalid_lists_are_rejected() {
        let base = ExperimentConfig::for_preset(Preset::Example1, 16).unwrap();
        let mut c = base.clone();
        c.m_list = vec![40, 20];
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.ranks = vec![0];
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.ranks = vec![16];
        assert!(c.validate().is_err());
        let mut c = base;
        c.ranks = vec![3, 3];
        assert!(c.validate().is_err());
    }
}
