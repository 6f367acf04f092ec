//! Exponents `λ` of the local solutions `χ ≈ v e^{λp}` at large separation.

use super::{Equation, PointCoefficients};
use crate::error::{CwfError, Result};
use crate::surface_integrals::{SurfaceMatrices, SurfaceModel};
use nalgebra::{Complex, DMatrix, DVector};

type C64 = Complex<f64>;

/// One selected root with its eigenvector (unbalanced variables).
#[derive(Debug, Clone)]
pub struct PhysicalRoot {
    pub lambda: C64,
    pub vector: DVector<C64>,
    /// Configuration channel the root is attached to.
    pub label: usize,
}

#[derive(Debug, Clone)]
pub struct AsymptoticRoots {
    pub p: f64,
    pub energy: f64,
    /// All `2 n_f` roots, ascending by real part.
    pub roots: Vec<C64>,
    /// The `n_f` roots with the smallest real parts, ordered by label.
    pub physical: Vec<PhysicalRoot>,
}

/// Roots of `det(λ² I + λ K1 − A) = 0` at separation `m.p` (possibly infinite).
pub fn asymptotic_roots(m: &SurfaceMatrices, energy: f64, eq: &Equation) -> Result<AsymptoticRoots> {
    let c = PointCoefficients::from_matrices(m)?;
    roots_from_coefficients(&c, energy, eq.repulsion())
}

fn balanced(c: &PointCoefficients, a: &DMatrix<f64>) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = c.size();
    let w = &c.weight;
    let k1 = DMatrix::from_fn(n, n, |i, j| c.k1[(i, j)] * w[i] / w[j]);
    let a = DMatrix::from_fn(n, n, |i, j| a[(i, j)] * w[i] / w[j]);
    (k1, a)
}

fn null_vector(k1: &DMatrix<f64>, a: &DMatrix<f64>, lambda: C64) -> Result<DVector<C64>> {
    let n = k1.nrows();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let diag = if i == j { lambda * lambda } else { C64::new(0.0, 0.0) };
        diag + lambda * k1[(i, j)] - C64::new(a[(i, j)], 0.0)
    });
    let svd = m.svd(false, true);
    let vt = svd.v_t.ok_or(CwfError::RankDeficient)?;
    let idx = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .map(|(i, _)| i)
        .ok_or(CwfError::RankDeficient)?;
    Ok(vt.row(idx).adjoint())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Root selection and channel labelling for precomputed coefficients.
pub fn roots_from_coefficients(
    c: &PointCoefficients,
    energy: f64,
    repulsion: f64,
) -> Result<AsymptoticRoots> {
    let n = c.size();
    let a = c.potential(energy, repulsion);
    let (k1, ab) = balanced(c, &a);
    let mut comp = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        comp[(i, n + i)] = 1.0;
        for j in 0..n {
            comp[(n + i, j)] = ab[(i, j)];
            comp[(n + i, n + j)] = -k1[(i, j)];
        }
    }
    let mut roots: Vec<C64> = comp.complex_eigenvalues().iter().copied().collect();
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let selected = &roots[..n];
    let mut vecs = Vec::with_capacity(n);
    for &lambda in selected {
        let v = null_vector(&k1, &ab, lambda)?;
        let norm = v.norm();
        vecs.push(v / C64::new(norm, 0.0));
    }
    // Channel labels: the assignment maximizing the product of component sizes.
    let best = permutations(n)
        .into_iter()
        .map(|perm| {
            let score: f64 = (0..n).map(|k| vecs[k][perm[k]].norm().max(1e-300).ln()).sum();
            (score, perm)
        })
        .max_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, perm)| perm)
        .expect("at least one permutation");
    let mut physical: Vec<PhysicalRoot> = (0..n)
        .map(|k| {
            let label = best[k];
            let v = &vecs[k];
            let phase = v[label] / C64::new(v[label].norm(), 0.0);
            let v = v.map(|x| x / phase);
            let unbalanced = DVector::from_fn(n, |i, _| v[i] / c.weight[i]);
            PhysicalRoot {
                lambda: selected[k],
                vector: unbalanced,
                label,
            }
        })
        .collect();
    physical.sort_by_key(|r| r.label);
    Ok(AsymptoticRoots {
        p: c.p,
        energy,
        roots,
        physical,
    })
}

impl AsymptoticRoots {
    /// Real right-boundary data `(X, X')`: one column per physical root.
    ///
    /// A complex-conjugate pair contributes its real and imaginary parts.
    pub fn real_seed(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let n = self.physical.len();
        let mut x = DMatrix::zeros(n, n);
        let mut dx = DMatrix::zeros(n, n);
        let scale = self
            .physical
            .iter()
            .map(|r| r.lambda.norm())
            .fold(1.0, f64::max);
        let mut used = vec![false; n];
        for k in 0..n {
            if used[k] {
                continue;
            }
            let r = &self.physical[k];
            let is_complex = r.lambda.im.abs() > 1e-12 * scale;
            let partner = if is_complex {
                (0..n).find(|&j| {
                    j != k && !used[j] && (self.physical[j].lambda - r.lambda.conj()).norm() < 1e-8 * scale
                })
            } else {
                None
            };
            let dv = r.vector.map(|v| v * r.lambda);
            match partner {
                Some(j) => {
                    // Use the member with positive imaginary part for both columns.
                    let (v, d) = if r.lambda.im > 0.0 {
                        (r.vector.clone(), dv)
                    } else {
                        let o = &self.physical[j];
                        (o.vector.clone(), o.vector.map(|v| v * o.lambda))
                    };
                    for i in 0..n {
                        x[(i, k)] = v[i].re;
                        dx[(i, k)] = d[i].re;
                        x[(i, j)] = v[i].im;
                        dx[(i, j)] = d[i].im;
                    }
                    used[j] = true;
                }
                None => {
                    for i in 0..n {
                        x[(i, k)] = r.vector[i].re;
                        dx[(i, k)] = dv[i].re;
                    }
                }
            }
            used[k] = true;
        }
        (x, dx)
    }

    /// Smallest singular value of `Λ(λ)` relative to the largest, per root.
    pub fn residuals(&self, c: &PointCoefficients, repulsion: f64) -> Vec<f64> {
        let a = c.potential(self.energy, repulsion);
        let (k1, ab) = balanced(c, &a);
        let n = c.size();
        self.roots
            .iter()
            .map(|&lambda| {
                let m = DMatrix::from_fn(n, n, |i, j| {
                    let diag = if i == j { lambda * lambda } else { C64::new(0.0, 0.0) };
                    diag + lambda * k1[(i, j)] - C64::new(ab[(i, j)], 0.0)
                });
                let sv = m.singular_values();
                let max = sv.max();
                let scale = max.max(lambda.norm_sqr()).max(1.0);
                sv.min() / scale
            })
            .collect()
    }
}

/// Physical roots along a sequence of separations, each track following
/// its nearest neighbour from the previous separation.
pub fn track_roots<M: SurfaceModel>(
    model: &M,
    ps: &[f64],
    energy: f64,
    eq: &Equation,
) -> Result<Vec<Vec<C64>>> {
    let mut tracks: Vec<Vec<C64>> = Vec::new();
    for &p in ps {
        let r = asymptotic_roots(&model.matrices(p)?, energy, eq)?;
        let mut current: Vec<C64> = r.roots[..r.physical.len()].to_vec();
        if tracks.is_empty() {
            tracks = current.iter().map(|&l| vec![l]).collect();
            continue;
        }
        let n = current.len();
        let last: Vec<C64> = tracks.iter().map(|t| *t.last().expect("non-empty")).collect();
        let best = permutations(n)
            .into_iter()
            .min_by(|x, y| {
                let cost = |perm: &Vec<usize>| -> f64 {
                    (0..n).map(|k| (current[perm[k]] - last[k]).norm()).sum()
                };
                cost(x).total_cmp(&cost(y))
            })
            .expect("at least one permutation");
        for (k, t) in tracks.iter_mut().enumerate() {
            t.push(current[best[k]]);
        }
        current.clear();
    }
    Ok(tracks)
}
