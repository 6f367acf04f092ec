//! Surface overlap and drift matrices, closed form against direct quadrature.

use cwf::basis::ConfigurationBasis;
use cwf::surface_integrals::{ClosedFormSurface, QuadratureSurface, SurfaceModel};

fn main() -> cwf::Result<()> {
    let basis = ConfigurationBasis::new(2)?;
    let closed = ClosedFormSurface::new(&basis);
    let quad = QuadratureSurface::new(&basis);
    println!("{:>6} {:>16} {:>16} {:>16} {:>10}", "p", "s11", "s12", "u11", "|Δs11|");
    for &p in &[0.01, 0.1, 1.0, 5.0, 20.0] {
        let a = closed.matrices(p)?;
        let b = quad.matrices(p)?;
        println!(
            "{p:>6} {:>16.9e} {:>16.9e} {:>16.9e} {:>10.1e}",
            a.s[(0, 0)],
            a.s[(0, 1)],
            a.u[(0, 0)],
            (a.s[(0, 0)] - b.s[(0, 0)]).abs()
        );
    }
    Ok(())
}
