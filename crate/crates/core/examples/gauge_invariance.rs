//! Multiplying all surface matrices by a positive function leaves E unchanged.

use cwf::basis::ConfigurationBasis;
use cwf::cwf_ode::{solve_ion, Equation, Method, SolverConfig};
use cwf::surface_integrals::{ClosedFormSurface, GaugeScaled};

fn main() -> cwf::Result<()> {
    let cfg = SolverConfig::default();
    let eq = Equation::ion(2.0);
    let base = ClosedFormSurface::new(&ConfigurationBasis::new(2)?);
    let plain = solve_ion(&base, eq, Method::Thomas, &cfg, false)?;
    let scaled = GaugeScaled {
        inner: base,
        gauge: |p: f64| 1.0 + p * p,
    };
    let gauged = solve_ion(&scaled, eq, Method::Thomas, &cfg, false)?;
    println!("plain {:.10}  gauged {:.10}", plain.energy, gauged.energy);
    Ok(())
}
