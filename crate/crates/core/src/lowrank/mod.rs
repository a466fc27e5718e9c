//! Fixed-rank dynamical low-rank integration of the split subflows.

pub mod dense;
mod factored;
mod flows;
mod pair;
mod projector;

pub use factored::{FactoredSum, FactoredTerm, MatrixAction};
pub use flows::{
    left_flow_sums, lowrank_flow_f, lowrank_flow_x, lowrank_flow_y, lowrank_integrate, lowrank_integrate_with,
    lowrank_strang_step, right_flow_sums,
};
pub use pair::LowRankPair;
pub use projector::{dlr_fl, dlr_fn, dlr_retruncate};
