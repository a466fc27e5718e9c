use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::model::{GridSpec, Laplacian1d, ModelParams, NonlinearPair, PairState, TimeGrid};
use crate::splitting::{build_flow, flow_f, flow_x, flow_y, Direction, FlowOperator};

/// Everything a splitting integrator needs besides the state and the time
/// grid.
#[derive(Clone, Debug)]
pub struct SplittingSetup {
    pub grid: GridSpec,
    pub params: ModelParams,
    pub nonlinear: NonlinearPair,
    /// RK4 substeps per nonlinear kick when `g ≠ 0`.
    pub fn_substeps: usize,
}

impl SplittingSetup {
    pub fn new(grid: GridSpec, params: ModelParams, nonlinear: NonlinearPair) -> Self {
        SplittingSetup {
            grid,
            params,
            nonlinear,
            fn_substeps: 1,
        }
    }
}

/// The x- and y-flows over half a step.
#[derive(Clone, Debug)]
pub struct HalfStepFlows {
    pub x: Arc<FlowOperator>,
    pub y: Arc<FlowOperator>,
}

impl HalfStepFlows {
    pub fn build(grid: &GridSpec, params: &ModelParams, tau: f64) -> Result<Self> {
        Ok(HalfStepFlows {
            x: Arc::new(build_flow(Direction::X, 0.5 * tau, params, &Laplacian1d::along_x(grid))?),
            y: Arc::new(build_flow(Direction::Y, 0.5 * tau, params, &Laplacian1d::along_y(grid))?),
        })
    }

    pub(crate) fn check(&self, tau: f64) -> Result<()> {
        let half = 0.5 * tau;
        let close = |s: f64| (s - half).abs() <= 1e-12 * half.abs().max(f64::MIN_POSITIVE);
        if self.x.direction != Direction::X || self.y.direction != Direction::Y {
            return Err(Error::InvalidParameter("half-step flows have wrong directions".into()));
        }
        if !(close(self.x.step) && close(self.y.step)) {
            return Err(Error::InvalidParameter(format!(
                "inconsistent flow steps: expected {half}, got x = {}, y = {}",
                self.x.step, self.y.step
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct FlowKey {
    direction: Direction,
    step: u64,
    n: usize,
    h: u64,
    params: [u64; 7],
}

impl FlowKey {
    fn new(direction: Direction, step: f64, lap: &Laplacian1d, p: &ModelParams) -> Self {
        FlowKey {
            direction,
            step: step.to_bits(),
            n: lap.n,
            h: lap.h.to_bits(),
            params: [
                p.alpha.to_bits(),
                p.beta.to_bits(),
                p.gamma.to_bits(),
                p.delta.to_bits(),
                p.omega[0].to_bits(),
                p.omega[1].to_bits(),
                p.omega[2].to_bits(),
            ],
        }
    }
}

/// Flow operators keyed by direction, step, operator and coefficients.
#[derive(Default)]
pub struct FlowCache {
    entries: Mutex<HashMap<FlowKey, Arc<FlowOperator>>>,
}

impl FlowCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(
        &self,
        direction: Direction,
        step: f64,
        params: &ModelParams,
        lap: &Laplacian1d,
    ) -> Result<Arc<FlowOperator>> {
        let key = FlowKey::new(direction, step, lap, params);
        if let Some(f) = self.entries.lock().expect("flow cache poisoned").get(&key) {
            return Ok(Arc::clone(f));
        }
        let flow = Arc::new(build_flow(direction, step, params, lap)?);
        self.entries
            .lock()
            .expect("flow cache poisoned")
            .insert(key, Arc::clone(&flow));
        Ok(flow)
    }

    pub fn half_step_flows(&self, grid: &GridSpec, params: &ModelParams, tau: f64) -> Result<HalfStepFlows> {
        Ok(HalfStepFlows {
            x: self.get(Direction::X, 0.5 * tau, params, &Laplacian1d::along_x(grid))?,
            y: self.get(Direction::Y, 0.5 * tau, params, &Laplacian1d::along_y(grid))?,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("flow cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One step of `Φˣ_{τ/2} ∘ Φʸ_{τ/2} ∘ Φᶠ_τ ∘ Φʸ_{τ/2} ∘ Φˣ_{τ/2}`, applied
/// rightmost first.
pub fn strang_step(
    state: &PairState,
    flows: &HalfStepFlows,
    tau: f64,
    params: &ModelParams,
    nl: &NonlinearPair,
    fn_substeps: usize,
) -> Result<PairState> {
    flows.check(tau)?;
    let s = flow_x(state, &flows.x)?;
    let s = flow_y(&s, &flows.y)?;
    let s = flow_f(&s, tau, params.omega[2], nl, fn_substeps)?;
    let s = flow_y(&s, &flows.y)?;
    flow_x(&s, &flows.x)
}

/// `M` Strang steps from `state0`. The observer sees `(k, t_k, state)` for
/// `k = 0..=M`.
pub fn integrate_fullrank(
    state0: &PairState,
    setup: &SplittingSetup,
    time: &TimeGrid,
    observer: impl FnMut(usize, f64, &PairState),
) -> Result<PairState> {
    let flows = HalfStepFlows::build(&setup.grid, &setup.params, time.tau())?;
    integrate_fullrank_with(state0, setup, time, &flows, observer)
}

/// Same as [`integrate_fullrank`] with prebuilt flows.
pub fn integrate_fullrank_with(
    state0: &PairState,
    setup: &SplittingSetup,
    time: &TimeGrid,
    flows: &HalfStepFlows,
    mut observer: impl FnMut(usize, f64, &PairState),
) -> Result<PairState> {
    let tau = time.tau();
    let mut state = state0.clone();
    observer(0, 0.0, &state);
    for k in 1..=time.steps {
        state = strang_step(&state, flows, tau, &setup.params, &setup.nonlinear, setup.fn_substeps)?;
        if !state.is_finite() {
            return Err(Error::BlowUp { step: k, time: time.t(k) });
        }
        observer(k, time.t(k), &state);
    }
    Ok(state)
}
