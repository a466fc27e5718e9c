//! Config parsing and file output.

mod atomic;
mod config;
mod csv;
mod pgm;

pub use atomic::{create_dir_all, write_atomic};
pub use config::{parse_config, parse_config_str};
pub use csv::{format_csv, format_matrix_csv, parse_matrix_csv, write_csv, write_matrix_csv, CSV_HEADER};
pub use pgm::{encode_pgm, read_pgm, write_pgm, PgmRange};
