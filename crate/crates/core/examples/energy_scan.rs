//! Sign and magnitude of the matching determinant across the energy bracket.

use cwf::basis::ConfigurationBasis;
use cwf::cwf_ode::{find_energy, Equation, ShootingSolver, SolverConfig};
use cwf::surface_integrals::ClosedFormSurface;

fn main() -> cwf::Result<()> {
    let cfg = SolverConfig {
        scan_step: 0.01,
        ..SolverConfig::default()
    };
    let model = ClosedFormSurface::new(&ConfigurationBasis::new(1)?);
    let solver = ShootingSolver::new(&model, Equation::ion(2.0), cfg.clone())?;
    let r = find_energy(&solver, cfg.scan_lo, cfg.scan_hi, cfg.scan_step, cfg.tol)?;
    for (e, d) in &r.scan {
        let bar = "#".repeat(((d.log_abs + 40.0).max(0.0) / 2.0) as usize);
        println!("{e:>8.3} {:>2} {:>9.2} {bar}", if d.sign > 0.0 { "+" } else { "-" }, d.log_abs);
    }
    println!("root {:.10} ({} sign change(s))", r.energy, r.sign_changes);
    Ok(())
}
