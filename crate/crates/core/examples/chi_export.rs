//! Write the weight functions of one ion to CSV.
//!
//! `cargo run --release --example chi_export -- chi.csv`

use cwf::cli::{export_chi, RunConfig};
use std::fs::File;
use std::io::BufWriter;

fn main() -> cwf::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "chi.csv".into());
    let mut cfg = RunConfig::default();
    cfg.set("ion", "He")?;
    cfg.n_f = 2;
    let mut w = BufWriter::new(File::create(&path)?);
    let report = export_chi(&cfg, &mut w)?;
    println!("E = {:.7} a.u.; {} written", report.energy_au(), path);
    Ok(())
}
