//! Large-separation exponents of the weight functions and how they settle.

use cwf::basis::ConfigurationBasis;
use cwf::cwf_ode::{asymptotic_roots, track_roots, Equation};
use cwf::surface_integrals::{ClosedFormSurface, SurfaceModel};

fn main() -> cwf::Result<()> {
    let basis = ConfigurationBasis::new(3)?;
    let model = ClosedFormSurface::new(&basis);
    let eq = Equation::ion(2.0);
    let e = -0.72;

    let r = asymptotic_roots(&model.matrices(40.0)?, e, &eq)?;
    println!("all roots at p = 40:");
    for l in &r.roots {
        println!("  {:+.6} {:+.6}i", l.re, l.im);
    }
    for root in &r.physical {
        println!("channel {} -> {:+.6}", root.label + 1, root.lambda.re);
    }

    let ps = [5.0, 10.0, 20.0, 40.0, 80.0];
    let tracks = track_roots(&model, &ps, e, &eq)?;
    println!("tracked physical exponents at p = {ps:?}:");
    for (k, track) in tracks.iter().enumerate() {
        let re: Vec<String> = track.iter().map(|l| format!("{:+.5}", l.re)).collect();
        println!("  root {}: {}", k + 1, re.join(" "));
    }
    Ok(())
}
