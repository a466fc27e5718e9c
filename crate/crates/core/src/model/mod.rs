//! Problem definition: grid, coefficients, nonlinearities, initial data and
//! the semi-discrete operators.

mod discretization;
mod grid;
mod nonlinear;
mod params;
mod preset;

pub use discretization::{build_laplacian_1d, sample_initial, semidiscrete_rhs, Laplacian1d, PairState};
pub use grid::{GridSpec, TimeGrid};
pub use nonlinear::{apply_nonlinear, NonlinearPair, ScalarMap};
pub use params::{ModelParams, WEIGHT_SUM_TOL};
pub use preset::{InitialField, Preset, PresetDefaults};
