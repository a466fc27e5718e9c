//! Error metrics, convergence tables, reference solutions and snapshot
//! series.

mod config;
mod metrics;
pub mod reference;
mod snapshot;
mod table;

pub use config::{ExperimentConfig, RangePolicy};
pub use metrics::{observed_rate, relerr};
pub use reference::{cache_key, compute_reference, reference_solution};
pub use snapshot::{snapshot_series, SnapshotSeries};
pub use table::{convergence_table, convergence_table_with, CellStatus, ConvergenceCell};
