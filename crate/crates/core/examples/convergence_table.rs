//! Low-rank convergence table: a rank that is too small stalls once the
//! time error drops below the truncation error.

use dlrwave::harness::{compute_reference, convergence_table, ExperimentConfig};
use dlrwave::io::format_csv;
use dlrwave::model::Preset;

fn main() -> dlrwave::Result<()> {
    let mut cfg = ExperimentConfig::for_preset(Preset::Example1, 64)?;
    cfg.m_list = vec![10, 20, 40, 80, 160];
    cfg.ranks = vec![3, 7, 13];
    cfg.validate()?;
    let reference = compute_reference(&cfg)?;
    let cells = convergence_table(&cfg, &reference)?;
    print!("{}", format_csv(&cells)?);
    Ok(())
}
