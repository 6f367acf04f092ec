//! Two fermions in the well: antisymmetric-sector CI and masked solve.

use cwf::discrete_well::{ci_solve, cwf_solve, exact_sector, partition_surfaces, PartitionKind, Sector, WellSpec};

fn main() -> cwf::Result<()> {
    let spec = WellSpec::new(2, 8)?;
    let exact = exact_sector(&spec, Sector::Antisymmetric)?[0];
    let part = partition_surfaces(&spec, PartitionKind::Total)?;
    println!("exact {exact:.9}");
    for k in 2..=8 {
        let ci = ci_solve(&spec, k, Sector::Antisymmetric)?[0];
        let cwf = cwf_solve(&spec, &part, k, Sector::Antisymmetric)?.values[0];
        println!("k={k}  CI err {:.2e}  CWF err {:.2e}", ci - exact, cwf - exact);
    }
    Ok(())
}
