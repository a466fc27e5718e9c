pub mod cli;
pub mod error;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod lowrank;
pub mod model;
pub mod splitting;

pub use error::{Error, Result};
