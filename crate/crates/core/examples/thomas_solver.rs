//! Block-tridiagonal solve compared with shooting for the same ion.

use cwf::basis::ConfigurationBasis;
use cwf::cwf_ode::{solve_ion, Equation, Method, SolverConfig};
use cwf::surface_integrals::ClosedFormSurface;

fn main() -> cwf::Result<()> {
    let z: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2.0);
    let cfg = SolverConfig::default();
    for n_f in 1..=4 {
        let model = ClosedFormSurface::new(&ConfigurationBasis::new(n_f)?);
        let eq = Equation::ion(z);
        let t = solve_ion(&model, eq, Method::Thomas, &cfg, false)?;
        let s = solve_ion(&model, eq, Method::Shooting, &cfg, false)?;
        println!(
            "n_f={n_f}  thomas {:.8}  shooting {:.8}  diff {:.1e}",
            t.energy_au(),
            s.energy_au(),
            (t.energy - s.energy).abs()
        );
    }
    Ok(())
}
