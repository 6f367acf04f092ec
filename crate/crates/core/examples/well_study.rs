//! Three particles in a discrete well: exact, CI and masked-surface solves.

use cwf::discrete_well::{
    ci_solve, cwf_solve, exact_spectrum, partition_surfaces, symmetry_census, PartitionKind, Sector, WellSpec,
};

fn main() -> cwf::Result<()> {
    let spec = WellSpec::new(3, 8)?;
    let full = exact_spectrum(&spec);
    let (s, a, m) = symmetry_census(&spec, &full);
    println!("exact ground {:.9}; census {s}/{a}/{m}", full.values[0]);

    let kinds = [PartitionKind::Total, PartitionKind::First, PartitionKind::Pair];
    let parts: Vec<_> = kinds.iter().map(|&k| partition_surfaces(&spec, k)).collect::<cwf::Result<_>>()?;
    for (p, kind) in parts.iter().zip(kinds) {
        println!("{}: {} surface classes", kind.label(), p.classes.len());
    }
    for k in 2..=5 {
        let ci = ci_solve(&spec, k, Sector::All)?[0];
        let cwf: Vec<String> = parts
            .iter()
            .map(|p| cwf_solve(&spec, p, k, Sector::All).map(|s| format!("{:.7}", s.values[0])))
            .collect::<cwf::Result<_>>()?;
        println!("k={k}  CI {ci:.7}  CWF {}", cwf.join(" "));
    }
    Ok(())
}
