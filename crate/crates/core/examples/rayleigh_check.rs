//! Energy recomputed as a Rayleigh quotient of the shooting solution.

use cwf::basis::ConfigurationBasis;
use cwf::cwf_ode::{rayleigh_energy, solve_ion, Equation, Method, SolverConfig};
use cwf::surface_integrals::{ClosedFormSurface, SurfaceModel};

fn main() -> cwf::Result<()> {
    let model = ClosedFormSurface::new(&ConfigurationBasis::new(2)?);
    let eq = Equation::ion(2.0);
    let sol = solve_ion(&model, eq, Method::Shooting, &SolverConfig::default(), true)?;
    let chi = sol.chi.expect("requested");
    let mats = chi.mesh.iter().map(|&p| model.matrices(p)).collect::<cwf::Result<Vec<_>>>()?;
    let q = rayleigh_energy(&chi, &mats, &eq)?;
    println!("eigenvalue {:.9}  quotient {:.9}  diff {:.1e}", sol.energy, q, (q - sol.energy).abs());
    Ok(())
}
