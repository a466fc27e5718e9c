//! Full-rank Strang splitting: exact linear flows and the split nonlinear
//! flow, composed palindromically.

mod flow;
mod nonlinear_flow;
mod stepper;

pub use flow::{
    build_flow, build_flow_pade, exp2x2, flow_x, flow_y, generator, mode_generator, Direction, FlowOperator,
};
pub use nonlinear_flow::{flow_f, kick, rk4_step};
pub use stepper::{
    integrate_fullrank, integrate_fullrank_with, strang_step, FlowCache, HalfStepFlows, SplittingSetup,
};
