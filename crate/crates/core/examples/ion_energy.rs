//! Ground-state energy of a He-like ion by shooting.
//!
//! `cargo run --release --example ion_energy -- Li+ 2`

use cwf::basis::ConfigurationBasis;
use cwf::cli::ReferenceTable;
use cwf::cwf_ode::{solve_ion, Equation, Method, SolverConfig};
use cwf::surface_integrals::ClosedFormSurface;

fn main() -> cwf::Result<()> {
    let mut args = std::env::args().skip(1);
    let ion = args.next().unwrap_or_else(|| "He".into());
    let n_f: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let row = ReferenceTable::lookup(&ion)?;
    let basis = ConfigurationBasis::new(n_f)?;
    let model = ClosedFormSurface::new(&basis);
    let sol = solve_ion(&model, Equation::ion(row.z as f64), Method::Shooting, &SolverConfig::default(), false)?;

    println!("{} (Z = {}), {} configuration(s)", row.symbol, row.z, n_f);
    println!("  scaled energy  {:.10}", sol.energy);
    println!("  energy (a.u.)  {:.7}", sol.energy_au());
    println!("  table          {:.6}", row.cwf[n_f - 1]);
    println!("  CI             {:.7}", row.ci);
    Ok(())
}
