//! Two- and three-particle infinite well on a finite-difference grid.
//!
//! Exact diagonalization serves as the oracle for configuration interaction
//! (fixed coefficients on products of sine modes) and for the surface-masked
//! solver, where each configuration is split into pieces supported on one
//! constant-potential class of grid tuples.
//!
//! Tuple `(j_1, …, j_n)` with `j_a ∈ 0..N` is stored at index `Σ j_a N^a`.

use crate::basis::SineBasis;
use crate::error::{CwfError, Result};
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq)]
pub struct WellSpec {
    pub particles: usize,
    pub points: usize,
    pub q: f64,
    /// Regularizer added to every pair distance, in length units.
    pub lambda: f64,
}

impl WellSpec {
    /// Defaults `q = 1`, `λ = δx`.
    pub fn new(particles: usize, points: usize) -> Result<Self> {
        let spec = WellSpec {
            particles,
            points,
            q: 1.0,
            lambda: std::f64::consts::PI / (points + 1) as f64,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=3).contains(&self.particles) {
            return Err(CwfError::Config(format!(
                "particle count must be 2 or 3, got {}",
                self.particles
            )));
        }
        if self.points < 2 {
            return Err(CwfError::Config("well needs at least 2 interior points".into()));
        }
        if self.order() > 4096 {
            return Err(CwfError::Config(format!("order {} exceeds 4096", self.order())));
        }
        if !(self.lambda > 0.0) {
            return Err(CwfError::Config("lambda must be positive".into()));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        std::f64::consts::PI / (self.points + 1) as f64
    }

    pub fn order(&self) -> usize {
        self.points.pow(self.particles as u32)
    }

    pub fn tuple(&self, index: usize) -> Vec<usize> {
        let mut rest = index;
        (0..self.particles)
            .map(|_| {
                let j = rest % self.points;
                rest /= self.points;
                j
            })
            .collect()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().rev().fold(0, |acc, &j| acc * self.points + j)
    }

    /// `q / (|x_a − x_b| + λ)`.
    pub fn pair_potential(&self, ja: usize, jb: usize) -> f64 {
        let dist = (ja as f64 - jb as f64).abs() * self.step();
        self.q / (dist + self.lambda)
    }

    pub fn total_potential(&self, tuple: &[usize]) -> f64 {
        let mut v = 0.0;
        for a in 0..tuple.len() {
            for b in a + 1..tuple.len() {
                v += self.pair_potential(tuple[a], tuple[b]);
            }
        }
        v
    }
}

/// Dense Hamiltonian: three-point kinetic stencil per particle plus pair interaction.
pub fn build_hamiltonian(spec: &WellSpec) -> DMatrix<f64> {
    let n = spec.order();
    let dx2 = spec.step() * spec.step();
    let mut h = DMatrix::zeros(n, n);
    for idx in 0..n {
        let t = spec.tuple(idx);
        h[(idx, idx)] = 2.0 * spec.particles as f64 / dx2 + spec.total_potential(&t);
        for a in 0..spec.particles {
            let mut s = t.clone();
            if t[a] + 1 < spec.points {
                s[a] = t[a] + 1;
                h[(idx, spec.index(&s))] = -1.0 / dx2;
            }
            if t[a] > 0 {
                s[a] = t[a] - 1;
                h[(idx, spec.index(&s))] = -1.0 / dx2;
            }
        }
    }
    h
}

/// Eigenvalues ascending with matching eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

fn sorted_eigen(m: DMatrix<f64>) -> Spectrum {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    Spectrum { values, vectors }
}

pub fn exact_spectrum(spec: &WellSpec) -> Spectrum {
    sorted_eigen(build_hamiltonian(spec))
}

/// Permutation-symmetry sector of the many-particle basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sector {
    All,
    Symmetric,
    Antisymmetric,
}

impl std::str::FromStr for Sector {
    type Err = CwfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Sector::All),
            "symmetric" => Ok(Sector::Symmetric),
            "antisymmetric" => Ok(Sector::Antisymmetric),
            _ => Err(CwfError::Config(format!("unknown sector '{s}'"))),
        }
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, f64)> {
    match n {
        2 => vec![(vec![0, 1], 1.0), (vec![1, 0], -1.0)],
        3 => vec![
            (vec![0, 1, 2], 1.0),
            (vec![1, 2, 0], 1.0),
            (vec![2, 0, 1], 1.0),
            (vec![1, 0, 2], -1.0),
            (vec![0, 2, 1], -1.0),
            (vec![2, 1, 0], -1.0),
        ],
        _ => vec![(vec![0], 1.0)],
    }
}

/// Orthonormal configuration vectors built from the lowest `k` sine modes.
pub fn configuration_vectors(spec: &WellSpec, k: usize, sector: Sector) -> Result<DMatrix<f64>> {
    if k == 0 || k > spec.points {
        return Err(CwfError::Domain(format!("basis cut k = {k} outside 1..={}", spec.points)));
    }
    let sine = SineBasis::new(spec.points)?;
    let modes: Vec<Vec<f64>> = (1..=k).map(|m| sine.grid_vector(m)).collect();
    let n = spec.particles;
    let product = |occ: &[usize]| -> DVector<f64> {
        DVector::from_fn(spec.order(), |idx, _| {
            let t = spec.tuple(idx);
            (0..n).map(|a| modes[occ[a]][t[a]]).product()
        })
    };
    let mut occupations: Vec<Vec<usize>> = Vec::new();
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut rest = code;
        let occ: Vec<usize> = (0..n)
            .map(|_| {
                let m = rest % k;
                rest /= k;
                m
            })
            .collect();
        let keep = match sector {
            Sector::All => true,
            Sector::Symmetric => occ.windows(2).all(|w| w[0] <= w[1]),
            Sector::Antisymmetric => occ.windows(2).all(|w| w[0] < w[1]),
        };
        if keep {
            occupations.push(occ);
        }
    }
    if occupations.is_empty() {
        return Err(CwfError::EmptySector { k });
    }
    let cols: Vec<DVector<f64>> = occupations
        .iter()
        .map(|occ| {
            let v = match sector {
                Sector::All => product(occ),
                Sector::Symmetric | Sector::Antisymmetric => {
                    let mut acc = DVector::zeros(spec.order());
                    for (perm, sign) in permutations(n) {
                        let permuted: Vec<usize> = perm.iter().map(|&p| occ[p]).collect();
                        let w = if sector == Sector::Antisymmetric { sign } else { 1.0 };
                        acc += product(&permuted) * w;
                    }
                    acc
                }
            };
            let norm = v.norm();
            v / norm
        })
        .collect();
    Ok(DMatrix::from_columns(&cols))
}

/// CI: eigenvalues of `H` projected onto the configuration vectors.
pub fn ci_solve(spec: &WellSpec, k: usize, sector: Sector) -> Result<Vec<f64>> {
    let h = build_hamiltonian(spec);
    let b = configuration_vectors(spec, k, sector)?;
    Ok(sorted_eigen(b.transpose() * &h * &b).values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartitionKind {
    /// Total interaction potential.
    Total,
    /// Potential felt by particle 1: `v12 + v13`.
    First,
    /// Single pair potential `v12`.
    Pair,
}

impl PartitionKind {
    pub fn label(self) -> &'static str {
        match self {
            PartitionKind::Total => "p_t",
            PartitionKind::First => "p_1",
            PartitionKind::Pair => "p_2",
        }
    }
}

impl std::str::FromStr for PartitionKind {
    type Err = CwfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p_t" | "pt" | "total" => Ok(PartitionKind::Total),
            "p_1" | "p1" | "first" => Ok(PartitionKind::First),
            "p_2" | "p2" | "pair" => Ok(PartitionKind::Pair),
            _ => Err(CwfError::Config(format!("unknown partition kind '{s}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurfaceClass {
    pub potential: f64,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SurfacePartition {
    pub kind: PartitionKind,
    pub classes: Vec<SurfaceClass>,
}

impl SurfacePartition {
    /// Class index of every tuple.
    pub fn assignment(&self, order: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; order];
        for (c, class) in self.classes.iter().enumerate() {
            for &m in &class.members {
                out[m] = c;
            }
        }
        out
    }

    /// Whether every class of `self` lies inside a single class of `coarser`.
    pub fn refines(&self, coarser: &SurfacePartition, order: usize) -> bool {
        let other = coarser.assignment(order);
        self.classes.iter().all(|c| {
            let owners: BTreeSet<usize> = c.members.iter().map(|&m| other[m]).collect();
            owners.len() == 1
        })
    }
}

fn defining_potential(spec: &WellSpec, kind: PartitionKind, t: &[usize]) -> f64 {
    match kind {
        PartitionKind::Total => spec.total_potential(t),
        PartitionKind::First => (1..t.len()).map(|b| spec.pair_potential(t[0], t[b])).sum(),
        PartitionKind::Pair => spec.pair_potential(t[0], t[1]),
    }
}

/// How tuples are grouped into classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keying {
    /// By the integer distances entering the potential expression: sorted
    /// `(|j1−j2|, |j1−j3|, |j2−j3|)` for `p_t`, the unordered pair
    /// `{|j1−j2|, |j1−j3|}` for `p_1`, and `|j1−j2|` for `p_2`. Equal to
    /// value keying whenever distinct signatures give distinct potentials.
    Signature,
    /// By the floating-point potential value (relative tolerance 1e-12).
    Value,
}

fn signature(kind: PartitionKind, t: &[usize]) -> Vec<usize> {
    let d = |a: usize, b: usize| t[a].abs_diff(t[b]);
    let mut sig = match kind {
        PartitionKind::Total => {
            let mut v = Vec::new();
            for a in 0..t.len() {
                for b in a + 1..t.len() {
                    v.push(d(a, b));
                }
            }
            v
        }
        PartitionKind::First => (1..t.len()).map(|b| d(0, b)).collect(),
        PartitionKind::Pair => vec![d(0, 1)],
    };
    sig.sort_unstable();
    sig
}

/// Group grid tuples into classes on which the kind's potential is constant.
pub fn partition_surfaces(spec: &WellSpec, kind: PartitionKind) -> Result<SurfacePartition> {
    partition_surfaces_keyed(spec, kind, Keying::Signature)
}

pub fn partition_surfaces_keyed(spec: &WellSpec, kind: PartitionKind, keying: Keying) -> Result<SurfacePartition> {
    if spec.particles == 2 && kind == PartitionKind::First {
        return Err(CwfError::Config("p_1 is defined for three particles only".into()));
    }
    let mut classes: Vec<SurfaceClass> = Vec::new();
    match keying {
        Keying::Signature => {
            let mut groups: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
            for idx in 0..spec.order() {
                groups.entry(signature(kind, &spec.tuple(idx))).or_default().push(idx);
            }
            for members in groups.into_values() {
                let potential = defining_potential(spec, kind, &spec.tuple(members[0]));
                classes.push(SurfaceClass { potential, members });
            }
            classes.sort_by(|a, b| a.potential.total_cmp(&b.potential));
        }
        Keying::Value => {
            let mut keyed: Vec<(f64, usize)> = (0..spec.order())
                .map(|idx| (defining_potential(spec, kind, &spec.tuple(idx)), idx))
                .collect();
            keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            for (v, idx) in keyed {
                match classes.last_mut() {
                    Some(c) if (v - c.potential).abs() <= 1e-12 * v.abs().max(1.0) => c.members.push(idx),
                    _ => classes.push(SurfaceClass {
                        potential: v,
                        members: vec![idx],
                    }),
                }
            }
            for c in classes.iter_mut() {
                c.members.sort_unstable();
            }
        }
    }
    Ok(SurfacePartition { kind, classes })
}

/// Result of the surface-masked solve.
#[derive(Debug, Clone)]
pub struct CwfSolution {
    pub values: Vec<f64>,
    /// Retained directions per class.
    pub retained: Vec<usize>,
    /// Classes where every direction was pruned.
    pub skipped: Vec<usize>,
    /// Orthonormal retained basis, one column per direction.
    pub basis: DMatrix<f64>,
    pub vectors: DMatrix<f64>,
}

impl CwfSolution {
    pub fn dimension(&self) -> usize {
        self.retained.iter().sum()
    }
}

/// Masked-configuration solve with canonical orthogonalization per class.
pub fn cwf_solve(spec: &WellSpec, partition: &SurfacePartition, k: usize, sector: Sector) -> Result<CwfSolution> {
    let h = build_hamiltonian(spec);
    let configs = configuration_vectors(spec, k, sector)?;
    let mut columns: Vec<DVector<f64>> = Vec::new();
    let mut retained = Vec::with_capacity(partition.classes.len());
    let mut skipped = Vec::new();
    for (ci, class) in partition.classes.iter().enumerate() {
        let rows = &class.members;
        let b = DMatrix::from_fn(rows.len(), configs.ncols(), |r, c| configs[(rows[r], c)]);
        // Orthonormal basis of the column span of B from the eigenvectors of B Bᵀ.
        let gram = &b * b.transpose();
        let eig = SymmetricEigen::new(gram);
        let max = eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v));
        let mut kept = 0;
        for (j, &lam) in eig.eigenvalues.iter().enumerate() {
            if max > 0.0 && lam > 1e-10 * max {
                let mut col = DVector::zeros(spec.order());
                for (r, &row) in rows.iter().enumerate() {
                    col[row] = eig.eigenvectors[(r, j)];
                }
                columns.push(col);
                kept += 1;
            }
        }
        if kept == 0 {
            log::warn!("class {ci} of {} fully pruned", partition.kind.label());
            skipped.push(ci);
        }
        retained.push(kept);
    }
    if columns.is_empty() {
        return Err(CwfError::EmptySector { k });
    }
    let y = DMatrix::from_columns(&columns);
    let spectrum = sorted_eigen(y.transpose() * &h * &y);
    Ok(CwfSolution {
        values: spectrum.values,
        retained,
        skipped,
        vectors: &y * spectrum.vectors,
        basis: y,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryClass {
    Symmetric,
    Antisymmetric,
    Mixed,
}

fn permute_vector(spec: &WellSpec, v: &DVector<f64>, perm: &[usize]) -> DVector<f64> {
    let mut out = DVector::zeros(v.len());
    for idx in 0..v.len() {
        let t = spec.tuple(idx);
        let permuted: Vec<usize> = perm.iter().map(|&p| t[p]).collect();
        out[spec.index(&permuted)] = v[idx];
    }
    out
}

/// `(‖S v‖², ‖A v‖²)` for the symmetrizer and antisymmetrizer.
fn projector_norms(spec: &WellSpec, v: &DVector<f64>) -> (f64, f64) {
    let perms = permutations(spec.particles);
    let count = perms.len() as f64;
    let mut s = DVector::zeros(v.len());
    let mut a = DVector::zeros(v.len());
    for (perm, sign) in &perms {
        let pv = permute_vector(spec, v, perm);
        s += &pv;
        a += pv * *sign;
    }
    ((s / count).norm_squared(), (a / count).norm_squared())
}

pub fn classify_symmetry(v: &DVector<f64>, spec: &WellSpec) -> SymmetryClass {
    let norm2 = v.norm_squared();
    let (s, a) = projector_norms(spec, v);
    if s > (1.0 - 1e-8) * norm2 {
        SymmetryClass::Symmetric
    } else if a > (1.0 - 1e-8) * norm2 {
        SymmetryClass::Antisymmetric
    } else {
        SymmetryClass::Mixed
    }
}

fn degenerate_clusters(values: &[f64]) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && (values[end] - values[end - 1]).abs() < 1e-8 * values[end].abs().max(1.0) {
            end += 1;
        }
        out.push(start..end);
        start = end;
    }
    out
}

/// Per-state symmetry labels that are stable under rotations inside
/// degenerate clusters.
///
/// Each cluster gets as many symmetric and antisymmetric labels as the
/// traces of the projectors over its span; they go to the states with the
/// largest individual projector norms.
pub fn state_classes(spec: &WellSpec, spectrum: &Spectrum) -> Vec<SymmetryClass> {
    let mut labels = vec![SymmetryClass::Mixed; spectrum.values.len()];
    for cluster in degenerate_clusters(&spectrum.values) {
        let norms: Vec<(usize, f64, f64)> = cluster
            .clone()
            .map(|c| {
                let (s, a) = projector_norms(spec, &spectrum.vectors.column(c).into_owned());
                (c, s, a)
            })
            .collect();
        let n_sym = norms.iter().map(|x| x.1).sum::<f64>().round() as usize;
        let n_anti = norms.iter().map(|x| x.2).sum::<f64>().round() as usize;
        let mut by_sym = norms.clone();
        by_sym.sort_by(|x, y| y.1.total_cmp(&x.1));
        for x in by_sym.iter().take(n_sym) {
            labels[x.0] = SymmetryClass::Symmetric;
        }
        let mut by_anti: Vec<_> = norms.iter().filter(|x| labels[x.0] == SymmetryClass::Mixed).collect();
        by_anti.sort_by(|x, y| y.2.total_cmp(&x.2));
        for x in by_anti.iter().take(n_anti) {
            labels[x.0] = SymmetryClass::Antisymmetric;
        }
    }
    labels
}

/// Symmetric / antisymmetric / mixed state counts over a full spectrum.
pub fn symmetry_census(spec: &WellSpec, spectrum: &Spectrum) -> (usize, usize, usize) {
    let labels = state_classes(spec, spectrum);
    let count = |c: SymmetryClass| labels.iter().filter(|&&l| l == c).count();
    (
        count(SymmetryClass::Symmetric),
        count(SymmetryClass::Antisymmetric),
        count(SymmetryClass::Mixed),
    )
}

/// CSV with columns `state,energy,symmetry`.
pub fn write_spectrum_csv<W: std::io::Write>(out: &mut W, spec: &WellSpec, spectrum: &Spectrum) -> Result<()> {
    writeln!(out, "state,energy,symmetry")?;
    for (i, (e, c)) in spectrum.values.iter().zip(state_classes(spec, spectrum)).enumerate() {
        let label = match c {
            SymmetryClass::Symmetric => "symmetric",
            SymmetryClass::Antisymmetric => "antisymmetric",
            SymmetryClass::Mixed => "mixed",
        };
        writeln!(out, "{i},{},{label}", crate::surface_integrals::fmt_sig(*e))?;
    }
    Ok(())
}

/// Ground energies of every method at one basis cut.
#[derive(Debug, Clone)]
pub struct WellRow {
    pub k: usize,
    pub ci: Vec<f64>,
    pub cwf: Vec<(PartitionKind, Vec<f64>, usize)>,
}

/// Lowest `states` energies of CI and each masked solve for `k` in `ks`.
pub fn convergence_table(
    spec: &WellSpec,
    kinds: &[PartitionKind],
    ks: &[usize],
    sector: Sector,
    states: usize,
) -> Result<Vec<WellRow>> {
    let partitions: Vec<SurfacePartition> = kinds
        .iter()
        .map(|&kind| partition_surfaces(spec, kind))
        .collect::<Result<_>>()?;
    ks.iter()
        .map(|&k| {
            let ci = ci_solve(spec, k, sector)?;
            let cwf = partitions
                .iter()
                .map(|p| {
                    let sol = cwf_solve(spec, p, k, sector)?;
                    let dim = sol.dimension();
                    Ok((p.kind, sol.values.into_iter().take(states).collect(), dim))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(WellRow {
                k,
                ci: ci.into_iter().take(states).collect(),
                cwf,
            })
        })
        .collect()
}

/// Energies of a symmetry sector of the exact spectrum (full-basis CI).
pub fn exact_sector(spec: &WellSpec, sector: Sector) -> Result<Vec<f64>> {
    ci_solve(spec, spec.points, sector)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, points: usize) -> WellSpec {
        WellSpec::new(n, points).unwrap()
    }

    #[test]
    fn tuple_index_roundtrip() {
        let s = spec(3, 5);
        for idx in [0, 7, 124] {
            assert_eq!(s.index(&s.tuple(idx)), idx);
        }
        assert_eq!(s.tuple(1 + 5 * 2 + 25 * 3), vec![1, 2, 3]);
    }

    #[test]
    fn hamiltonian_orders_and_symmetry() {
        let h2 = build_hamiltonian(&spec(2, 8));
        assert_eq!(h2.nrows(), 64);
        let h3 = build_hamiltonian(&spec(3, 8));
        assert_eq!(h3.nrows(), 512);
        assert_eq!((&h3 - h3.transpose()).abs().max(), 0.0);
    }

    #[test]
    fn free_particles_are_separable() {
        let s = WellSpec { q: 0.0, ..spec(2, 6) };
        let sine = SineBasis::new(6).unwrap();
        let mut expected: Vec<f64> = Vec::new();
        for i in 1..=6 {
            for j in 1..=6 {
                expected.push(sine.kinetic_eigenvalue(i) + sine.kinetic_eigenvalue(j));
            }
        }
        expected.sort_by(f64::total_cmp);
        let got = exact_spectrum(&s).values;
        for (a, b) in got.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-9 * b);
        }
    }

    #[test]
    fn configuration_vectors_orthonormal() {
        let s = spec(3, 5);
        for sector in [Sector::All, Sector::Symmetric, Sector::Antisymmetric] {
            let b = configuration_vectors(&s, 4, sector).unwrap();
            let g = b.transpose() * &b;
            assert!((g - DMatrix::identity(b.ncols(), b.ncols())).abs().max() < 1e-12);
        }
        assert_eq!(configuration_vectors(&s, 4, Sector::Symmetric).unwrap().ncols(), 20);
        assert_eq!(configuration_vectors(&s, 4, Sector::Antisymmetric).unwrap().ncols(), 4);
    }

    #[test]
    fn empty_sector_errors() {
        let s = spec(3, 5);
        assert_eq!(
            ci_solve(&s, 2, Sector::Antisymmetric),
            Err(CwfError::EmptySector { k: 2 })
        );
        assert_eq!(ci_solve(&spec(2, 8), 2, Sector::Antisymmetric).unwrap().len(), 1);
    }

    #[test]
    fn two_particle_partition_by_distance() {
        let p = partition_surfaces(&spec(2, 8), PartitionKind::Pair).unwrap();
        assert_eq!(p.classes.len(), 8);
        let t = partition_surfaces(&spec(2, 8), PartitionKind::Total).unwrap();
        assert_eq!(t.classes.len(), 8);
        assert!(partition_surfaces(&spec(2, 8), PartitionKind::First).is_err());
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(WellSpec::new(4, 8).is_err());
        assert!(WellSpec::new(3, 1).is_err());
        assert!(WellSpec::new(3, 17).is_err());
    }

    #[test]
    fn classification_of_simple_vectors() {
        let s = spec(2, 4);
        let b = configuration_vectors(&s, 3, Sector::Antisymmetric).unwrap();
        assert_eq!(classify_symmetry(&b.column(0).into_owned(), &s), SymmetryClass::Antisymmetric);
        let b = configuration_vectors(&s, 3, Sector::Symmetric).unwrap();
        assert_eq!(classify_symmetry(&b.column(1).into_owned(), &s), SymmetryClass::Symmetric);
        let mut e = DVector::zeros(16);
        e[1] = 1.0;
        assert_eq!(classify_symmetry(&e, &s), SymmetryClass::Mixed);
    }

    #[test]
    fn spectrum_csv_labels_agree_with_census() {
        let s = spec(2, 4);
        let full = exact_spectrum(&s);
        assert_eq!(symmetry_census(&s, &full), (10, 6, 0));
        let mut buf = Vec::new();
        write_spectrum_csv(&mut buf, &s, &full).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 17);
        assert_eq!(text.lines().filter(|l| l.ends_with(",antisymmetric")).count(), 6);
        assert!(text.starts_with("state,energy,symmetry\n0,"));
    }
}
