//! Writes the entropy and max-probability diagram datasets for plotting.
//!
//! cargo run --example figure_datasets -- out_dir

use std::fs::File;
use std::path::PathBuf;

use icdiag::entropy::EntropyOrder;
use icdiag::harness::{emit_diagram, write_entropy_csv, write_maxp_csv, DiagramKind, SweepConfig};

fn main() -> icdiag::error::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;
    let cfg = SweepConfig::new(5, vec![EntropyOrder::new(0.8)?], 10_000, 42, 400)?;

    let pts = emit_diagram(DiagramKind::Entropy, &cfg)?;
    write_entropy_csv(&pts, cfg.n, File::create(dir.join("entropy_diagram.csv"))?)?;
    let pts_m = emit_diagram(DiagramKind::Maxp, &cfg)?;
    write_maxp_csv(&pts_m, cfg.n, File::create(dir.join("maxp_diagram.csv"))?)?;
    println!("wrote {} + {} rows to {}", pts.len(), pts_m.len(), dir.display());
    Ok(())
}
