//! Left/right partial solutions by classical RK4 and the matching determinant.

use super::energy::{ChiField, DetEvaluator};
use super::roots::{roots_from_coefficients, AsymptoticRoots};
use super::{coefficients_at, signed_log_det, Equation, PointCoefficients, SignedLog, SolverConfig};
use crate::error::{CwfError, Result};
use crate::surface_integrals::SurfaceModel;
use nalgebra::{DMatrix, DVector};

/// Graded mesh: steps `min(h_max, 0.1 p)` from `p_min`, then uniform to `p_max`.
pub fn graded_mesh(p_min: f64, p_max: f64, h_max: f64) -> Vec<f64> {
    let mut mesh = vec![p_min];
    let mut p = p_min;
    while 0.1 * p < h_max && p < p_max {
        p += 0.1 * p;
        mesh.push(p.min(p_max));
    }
    let rest = p_max - p;
    if rest > 0.0 {
        let n = (rest / h_max).ceil() as usize;
        let h = rest / n as f64;
        for k in 1..=n {
            mesh.push(if k == n { p_max } else { p + k as f64 * h });
        }
    }
    mesh
}

/// States `[X; X']` recorded along one integration.
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Mesh indices in integration order.
    pub indices: Vec<usize>,
    pub states: Vec<DMatrix<f64>>,
    /// Renormalization segment each state belongs to.
    pub segment: Vec<usize>,
    /// `Y_before = Y_after R` for each renormalization.
    pub transforms: Vec<DMatrix<f64>>,
    pub log_scale: f64,
    pub last: DMatrix<f64>,
}

impl Trajectory {
    /// Values and derivatives of the combination `last · c` at every recorded node.
    pub fn combine(&self, c: &DVector<f64>) -> Result<Vec<(usize, DVector<f64>, DVector<f64>)>> {
        let nseg = self.transforms.len();
        let mut coeffs = vec![c.clone(); nseg + 1];
        for s in (0..nseg).rev() {
            let r = &self.transforms[s];
            coeffs[s] = r
                .clone()
                .solve_upper_triangular(&coeffs[s + 1])
                .ok_or(CwfError::RankDeficient)?;
        }
        let n = c.len();
        Ok(self
            .indices
            .iter()
            .zip(&self.states)
            .zip(&self.segment)
            .map(|((&i, y), &s)| {
                let full = y * &coeffs[s];
                (i, full.rows(0, n).into_owned(), full.rows(n, n).into_owned())
            })
            .collect())
    }
}

/// Matching matrix and its determinant at the match node.
#[derive(Debug, Clone)]
pub struct MatchReport {
    pub index: usize,
    pub p: f64,
    pub det: SignedLog,
    pub omega: DMatrix<f64>,
    pub left: DMatrix<f64>,
    pub right: DMatrix<f64>,
}

/// `Ω = [[X_l, −X_r], [X_l', −X_r']]` with every column scaled to a unit value block.
pub fn matching_matrix(left: &DMatrix<f64>, right: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = left.ncols();
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for (block, (src, sign)) in [(left, 1.0), (right, -1.0)].into_iter().enumerate() {
        for k in 0..n {
            let col = src.column(k);
            let norm = col.rows(0, n).norm();
            if !(norm > 0.0) || !norm.is_finite() {
                return Err(CwfError::RankDeficient);
            }
            omega
                .column_mut(block * n + k)
                .copy_from(&(col * (sign / norm)));
        }
    }
    Ok(omega)
}

pub struct ShootingSolver {
    eq: Equation,
    config: SolverConfig,
    mesh: Vec<f64>,
    nodes: Vec<PointCoefficients>,
    mids: Vec<PointCoefficients>,
    match_index: usize,
}

impl ShootingSolver {
    pub fn new<M: SurfaceModel>(model: &M, eq: Equation, config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let mesh = graded_mesh(config.p_min, config.p_max, config.step);
        let midpoints: Vec<f64> = mesh.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let nodes = coefficients_at(model, &mesh)?;
        let mids = coefficients_at(model, &midpoints)?;
        let match_index = nearest_index(&mesh, config.p_match);
        Ok(ShootingSolver {
            eq,
            config,
            mesh,
            nodes,
            mids,
            match_index,
        })
    }

    pub fn mesh(&self) -> &[f64] {
        &self.mesh
    }

    pub fn equation(&self) -> &Equation {
        &self.eq
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn size(&self) -> usize {
        self.nodes[0].size()
    }

    pub fn match_index(&self) -> usize {
        self.match_index
    }

    pub fn set_match_index(&mut self, index: usize) -> Result<()> {
        if index == 0 || index + 1 >= self.mesh.len() {
            return Err(CwfError::MatchOutsideMesh {
                p: self.mesh.get(index).copied().unwrap_or(f64::NAN),
                lo: self.mesh[0],
                hi: *self.mesh.last().expect("non-empty mesh"),
            });
        }
        self.match_index = index;
        Ok(())
    }

    pub fn roots_at_end(&self, e: f64) -> Result<AsymptoticRoots> {
        roots_from_coefficients(self.nodes.last().expect("non-empty"), e, self.eq.repulsion())
    }

    fn derivative(&self, c: &PointCoefficients, e: f64, y: &DMatrix<f64>) -> DMatrix<f64> {
        let n = c.size();
        let x = y.rows(0, n);
        let dx = y.rows(n, n);
        let a = c.potential(e, self.eq.repulsion());
        let mut out = DMatrix::zeros(2 * n, n);
        out.rows_mut(0, n).copy_from(&dx);
        let acc = &a * x - &c.k1 * dx;
        out.rows_mut(n, n).copy_from(&acc);
        out
    }

    fn rk4(&self, from: usize, to: usize, e: f64, y: &DMatrix<f64>) -> DMatrix<f64> {
        let h = self.mesh[to] - self.mesh[from];
        let mid = &self.mids[from.min(to)];
        let k1 = self.derivative(&self.nodes[from], e, y);
        let k2 = self.derivative(mid, e, &(y + &k1 * (0.5 * h)));
        let k3 = self.derivative(mid, e, &(y + &k2 * (0.5 * h)));
        let k4 = self.derivative(&self.nodes[to], e, &(y + &k3 * h));
        y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
    }

    /// Weighted Gram–Schmidt of the columns of `[X; X']`; returns `R`.
    fn orthonormalize(&self, y: &mut DMatrix<f64>, w: &DVector<f64>) -> Result<DMatrix<f64>> {
        let n = w.len();
        let wfull = DVector::from_fn(2 * n, |i, _| w[i % n]);
        let mut q = DMatrix::from_fn(2 * n, n, |i, j| y[(i, j)] * wfull[i]);
        let mut r = DMatrix::zeros(n, n);
        for k in 0..n {
            for j in 0..k {
                let dot = q.column(j).dot(&q.column(k));
                r[(j, k)] = dot;
                let qj = q.column(j).into_owned();
                q.column_mut(k).axpy(-dot, &qj, 1.0);
            }
            let norm = q.column(k).norm();
            if !(norm > 0.0) || !norm.is_finite() {
                return Err(CwfError::RankDeficient);
            }
            r[(k, k)] = norm;
            q.column_mut(k).scale_mut(1.0 / norm);
        }
        *y = DMatrix::from_fn(2 * n, n, |i, j| q[(i, j)] / wfull[i]);
        Ok(r)
    }

    fn integrate(&self, start: usize, stop: usize, y0: DMatrix<f64>, e: f64, record: bool) -> Result<Trajectory> {
        let mut traj = Trajectory {
            indices: Vec::new(),
            states: Vec::new(),
            segment: Vec::new(),
            transforms: Vec::new(),
            log_scale: 0.0,
            last: DMatrix::zeros(0, 0),
        };
        let mut y = y0;
        let w0 = self.nodes[start].weight.clone();
        let r0 = self.orthonormalize(&mut y, &w0)?;
        traj.log_scale += r0.diagonal().iter().map(|v| v.ln()).sum::<f64>();
        if record {
            traj.indices.push(start);
            traj.states.push(y.clone());
            traj.segment.push(0);
        }
        let forward = stop >= start;
        let mut i = start;
        let mut steps = 0usize;
        while i != stop {
            let j = if forward { i + 1 } else { i - 1 };
            y = self.rk4(i, j, e, &y);
            if y.iter().any(|v| !v.is_finite()) {
                return Err(CwfError::Domain(format!(
                    "integration overflow at p = {}",
                    self.mesh[j]
                )));
            }
            steps += 1;
            i = j;
            if record {
                traj.indices.push(i);
                traj.states.push(y.clone());
                traj.segment.push(traj.transforms.len());
            }
            if steps.is_multiple_of(self.config.renorm_every) && i != stop {
                let r = self.orthonormalize(&mut y, &self.nodes[i].weight)?;
                traj.log_scale += r.diagonal().iter().map(|v| v.ln()).sum::<f64>();
                if record {
                    traj.transforms.push(r);
                }
            }
        }
        traj.last = y;
        Ok(traj)
    }

    /// Regular solutions from `p_min`: `χ = e_j e^{κ p_min}`, `χ' = κ χ`.
    pub fn integrate_left(&self, e: f64, record: bool) -> Result<Trajectory> {
        let n = self.size();
        let kappa = self.eq.cusp_exponent();
        let scale = (kappa * self.mesh[0]).exp();
        let mut y0 = DMatrix::zeros(2 * n, n);
        for j in 0..n {
            y0[(j, j)] = scale;
            y0[(n + j, j)] = kappa * scale;
        }
        self.integrate(0, self.match_index, y0, e, record)
    }

    /// Solutions seeded by the physical asymptotic roots at `p_max`.
    pub fn integrate_right(&self, e: f64, record: bool) -> Result<Trajectory> {
        let n = self.size();
        let roots = self.roots_at_end(e)?;
        let (x, dx) = roots.real_seed();
        let mut y0 = DMatrix::zeros(2 * n, n);
        y0.rows_mut(0, n).copy_from(&x);
        y0.rows_mut(n, n).copy_from(&dx);
        self.integrate(self.mesh.len() - 1, self.match_index, y0, e, record)
    }

    pub fn matching_det(&self, e: f64) -> Result<MatchReport> {
        let left = self.integrate_left(e, false)?.last;
        let right = self.integrate_right(e, false)?.last;
        let omega = matching_matrix(&left, &right)?;
        Ok(MatchReport {
            index: self.match_index,
            p: self.mesh[self.match_index],
            det: signed_log_det(&omega),
            omega,
            left,
            right,
        })
    }

    /// Continuity-matched weight functions at energy `e`.
    pub fn chi_field(&self, e: f64) -> Result<ChiField> {
        let n = self.size();
        let left = self.integrate_left(e, true)?;
        let right = self.integrate_right(e, true)?;
        let omega = matching_matrix(&left.last, &right.last)?;
        let null = smallest_right_singular(&omega)?;
        let norms = |y: &DMatrix<f64>, k: usize| y.column(k).rows(0, n).norm();
        let cl = DVector::from_fn(n, |k, _| null[k] / norms(&left.last, k));
        let cr = DVector::from_fn(n, |k, _| null[n + k] / norms(&right.last, k));
        let mut values = vec![DVector::zeros(n); self.mesh.len()];
        let mut derivs = vec![DVector::zeros(n); self.mesh.len()];
        for (i, v, d) in left.combine(&cl)? {
            values[i] = v;
            derivs[i] = d;
        }
        for (i, v, d) in right.combine(&cr)? {
            if i != self.match_index {
                values[i] = v;
                derivs[i] = d;
            }
        }
        Ok(ChiField::new(self.mesh.clone(), values, derivs, e).max_norm_normalized())
    }
}

impl DetEvaluator for ShootingSolver {
    fn det(&self, e: f64) -> Result<SignedLog> {
        Ok(self.matching_det(e)?.det)
    }
}

pub(crate) fn nearest_index(mesh: &[f64], p: f64) -> usize {
    let idx = mesh
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - p).abs().total_cmp(&(b.1 - p).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    idx.clamp(1, mesh.len().saturating_sub(2))
}

pub(crate) fn smallest_right_singular(m: &DMatrix<f64>) -> Result<DVector<f64>> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.ok_or(CwfError::RankDeficient)?;
    let idx = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .ok_or(CwfError::RankDeficient)?;
    Ok(vt.row(idx).transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_integrals::{SurfaceMatrices, SurfaceModel};

    /// `s = I`, `u = −2s/p`: the drift vanishes and χ'' = (ε − E) χ.
    pub(crate) struct FlatModel {
        pub eps: Vec<f64>,
    }

    impl SurfaceModel for FlatModel {
        fn size(&self) -> usize {
            self.eps.len()
        }

        fn matrices(&self, p: f64) -> Result<SurfaceMatrices> {
            let n = self.eps.len();
            let s = DMatrix::identity(n, n);
            let u = &s * (-2.0 / p);
            Ok(SurfaceMatrices::from_overlap(p, s, u, &self.eps))
        }
    }

    fn small_config() -> SolverConfig {
        SolverConfig {
            p_max: 10.0,
            step: 1e-2,
            p_match: 3.0,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn graded_mesh_is_increasing_and_hits_ends() {
        let m = graded_mesh(1e-4, 40.0, 2e-3);
        assert_eq!(m[0], 1e-4);
        assert_eq!(*m.last().unwrap(), 40.0);
        assert!(m.windows(2).all(|w| w[1] > w[0] && w[1] - w[0] <= 2e-3 + 1e-15));
    }

    #[test]
    fn non_interacting_constant_solution_matches() {
        let model = FlatModel { eps: vec![-1.0] };
        let solver = ShootingSolver::new(&model, Equation::non_interacting(), small_config()).unwrap();
        let rep = solver.matching_det(-1.0).unwrap();
        assert!(rep.det.value().abs() < 1e-12, "{:?}", rep.det);
        let left = solver.integrate_left(-1.0, false).unwrap().last;
        assert!((left[(1, 0)] / left[(0, 0)]).abs() < 1e-14);
    }

    #[test]
    fn rescaled_right_solution_keeps_det() {
        let model = FlatModel { eps: vec![-1.0, -0.625] };
        let solver = ShootingSolver::new(&model, Equation::non_interacting(), small_config()).unwrap();
        let l = solver.integrate_left(-0.9, false).unwrap().last;
        let r = solver.integrate_right(-0.9, false).unwrap().last;
        let d1 = signed_log_det(&matching_matrix(&l, &r).unwrap());
        let d2 = signed_log_det(&matching_matrix(&l, &(r * 1e6)).unwrap());
        assert_eq!(d1.sign, d2.sign);
        assert!((d1.log_abs - d2.log_abs).abs() < 1e-10);
    }

    #[test]
    fn recorded_trajectory_reconstructs_final_state() {
        let model = FlatModel { eps: vec![-1.0, -0.625] };
        let cfg = SolverConfig {
            renorm_every: 50,
            ..small_config()
        };
        let solver = ShootingSolver::new(&model, Equation::non_interacting(), cfg).unwrap();
        let t = solver.integrate_right(-1.2, true).unwrap();
        assert!(!t.transforms.is_empty());
        let c = DVector::from_vec(vec![0.3, -1.2]);
        let combined = t.combine(&c).unwrap();
        // Each channel decouples: χ_k ∝ e^{−√(ε_k − E) p} between recorded nodes.
        let (i0, v0, _) = &combined[0];
        let (i1, v1, _) = &combined[combined.len() - 1];
        let dp = solver.mesh()[*i1] - solver.mesh()[*i0];
        for (k, eps) in [-1.0f64, -0.625].iter().enumerate() {
            if v0[k].abs() > 1e-300 {
                let kappa = (eps + 1.2f64).sqrt();
                let growth = (v1[k] / v0[k]).ln() / dp;
                assert!((growth + kappa).abs() < 1e-6, "{growth} vs {kappa}");
            }
        }
        let last = &t.last * &c;
        assert!((&combined.last().unwrap().1 - last.rows(0, 2)).norm() < 1e-12 * last.norm());
    }

    #[test]
    fn match_index_bounds() {
        let model = FlatModel { eps: vec![-1.0] };
        let mut solver = ShootingSolver::new(&model, Equation::non_interacting(), small_config()).unwrap();
        assert!(solver.set_match_index(0).is_err());
        assert!(solver.set_match_index(10).is_ok());
    }
}
