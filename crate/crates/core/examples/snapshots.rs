//! Writes full-rank and low-rank PGM frames for one of the shape presets.
//!
//!     cargo run --release --example snapshots -- cardioid /tmp/frames

use std::path::PathBuf;

use dlrwave::harness::{snapshot_series, ExperimentConfig};
use dlrwave::io::{create_dir_all, write_pgm, PgmRange};
use dlrwave::linalg::rel_diff;
use dlrwave::model::Preset;

fn main() -> dlrwave::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset = Preset::from_name(&args.next().unwrap_or_else(|| "flower".into()))?;
    let out = PathBuf::from(args.next().unwrap_or_else(|| "snapshots".into()));
    let name = preset.name();

    // a coarse grid keeps this quick; the rank is scaled down with it
    let mut cfg = ExperimentConfig::for_preset(preset, 64)?;
    cfg.ranks = vec![24];
    cfg.m_list = vec![120];
    let s = snapshot_series(&cfg, &cfg.snapshot_times.clone())?;

    create_dir_all(&out)?;
    let (lo, hi) = s.value_range();
    for (i, t) in s.times.iter().enumerate() {
        for (method, frame) in [("fullrank", &s.fullrank[i]), ("lowrank", &s.lowrank[i])] {
            write_pgm(frame, &out.join(format!("{name}_{method}_{t}.pgm")), PgmRange::Fixed { lo, hi })?;
        }
        println!(
            "t = {t}: max|P| {:.4} (full) {:.4} (rank {}), rel diff {:.2e}",
            s.fullrank[i].max_abs(),
            s.lowrank[i].max_abs(),
            s.rank,
            rel_diff(&s.lowrank[i], &s.fullrank[i])
        );
    }
    println!("frames in {}", out.display());
    Ok(())
}
