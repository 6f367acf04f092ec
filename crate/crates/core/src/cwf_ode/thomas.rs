//! Block-tridiagonal (Thomas) elimination of the central-difference system.
//!
//! On a uniform mesh the row-scaled equation becomes
//! `A_k χ_{k−1} + B_k χ_k + C_k χ_{k+1} = 0` with
//!
//! ```text
//! A_k = −I/d² + K1/(2d),  B_k = 2I/d² + G_h + (c/p_k − E) G_s,  C_k = −I/d² − K1/(2d)
//! ```
//!
//! The upward sweep builds `χ_{k−1} = X^l_{k−1} χ_k`, the downward sweep
//! `χ_{k+1} = X^r_{k+1} χ_k`, and the closure block at the match index is
//! `F = A_m X^l_{m−1} + B_m + C_m X^r_{m+1}`. The returned determinant is
//! `Π det P · Π det Q · det F`, the determinant of the whole banded system,
//! which has no poles in `E`.

use super::energy::{ChiField, DetEvaluator};
use super::roots::roots_from_coefficients;
use super::shooting::{nearest_index, smallest_right_singular};
use super::{coefficients_at, signed_log_det, Equation, PointCoefficients, SignedLog, SolverConfig};
use crate::error::{CwfError, Result};
use crate::surface_integrals::SurfaceModel;
use nalgebra::{Complex, DMatrix, DVector};

type C64 = Complex<f64>;

#[derive(Debug, Clone)]
pub struct ThomasReport {
    pub index: usize,
    pub p: f64,
    pub det: SignedLog,
    pub closure: DMatrix<f64>,
}

pub struct ThomasSolver {
    eq: Equation,
    mesh: Vec<f64>,
    coeffs: Vec<PointCoefficients>,
    d: f64,
    match_index: usize,
}

struct Sweeps {
    left: Vec<DMatrix<f64>>,
    right: Vec<DMatrix<f64>>,
    det: SignedLog,
    closure: DMatrix<f64>,
}

impl ThomasSolver {
    pub fn new<M: SurfaceModel>(model: &M, eq: Equation, config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let span = config.p_max - config.p_min;
        let n = (span / config.thomas_step).round().max(4.0) as usize;
        let d = span / n as f64;
        let mesh: Vec<f64> = (0..=n)
            .map(|k| if k == n { config.p_max } else { config.p_min + k as f64 * d })
            .collect();
        let coeffs = coefficients_at(model, &mesh)?;
        let match_index = nearest_index(&mesh, config.p_match);
        Ok(ThomasSolver {
            eq,
            mesh,
            coeffs,
            d,
            match_index,
        })
    }

    pub fn mesh(&self) -> &[f64] {
        &self.mesh
    }

    pub fn step(&self) -> f64 {
        self.d
    }

    pub fn size(&self) -> usize {
        self.coeffs[0].size()
    }

    pub fn match_index(&self) -> usize {
        self.match_index
    }

    pub fn set_match_index(&mut self, index: usize) -> Result<()> {
        if index < 2 || index + 2 >= self.mesh.len() {
            return Err(CwfError::MatchOutsideMesh {
                p: self.mesh.get(index).copied().unwrap_or(f64::NAN),
                lo: self.mesh[0],
                hi: *self.mesh.last().expect("non-empty mesh"),
            });
        }
        self.match_index = index;
        Ok(())
    }

    fn blocks(&self, k: usize, e: f64) -> (DMatrix<f64>, DMatrix<f64>, DMatrix<f64>) {
        let c = &self.coeffs[k];
        let n = c.size();
        let id = DMatrix::<f64>::identity(n, n);
        let d2 = 1.0 / (self.d * self.d);
        let half = &c.k1 * (0.5 / self.d);
        let a = &id * -d2 + &half;
        let b = &id * (2.0 * d2) + c.potential(e, self.eq.repulsion());
        let cc = &id * -d2 - &half;
        (a, b, cc)
    }

    /// `V e^{Λd} V⁻¹` from the physical roots at `p_max`.
    fn right_seed(&self, e: f64) -> Result<DMatrix<f64>> {
        let last = self.coeffs.last().expect("non-empty");
        let roots = roots_from_coefficients(last, e, self.eq.repulsion())?;
        let n = self.size();
        let w = &last.weight;
        let v = DMatrix::from_fn(n, n, |i, k| roots.physical[k].vector[i] * w[i]);
        let growth = DMatrix::from_fn(n, n, |i, k| {
            if i == k {
                (roots.physical[k].lambda * self.d).exp()
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let vinv = v.clone().try_inverse().ok_or(CwfError::RankDeficient)?;
        let x = v * growth * vinv;
        Ok(DMatrix::from_fn(n, n, |i, j| x[(i, j)].re * w[j] / w[i]))
    }

    fn sweeps(&self, e: f64, keep: bool) -> Result<Sweeps> {
        let n = self.size();
        let last = self.mesh.len() - 1;
        let m = self.match_index;
        let kappa = self.eq.cusp_exponent();
        let mut det = SignedLog::ONE;

        let mut xl = DMatrix::<f64>::identity(n, n) * (-kappa * self.d).exp();
        let mut left = Vec::new();
        if keep {
            left.push(xl.clone());
        }
        for k in 1..m {
            let (a, b, c) = self.blocks(k, e);
            let p = &a * &xl + b;
            det = det.mul(signed_log_det(&p));
            let lu = p.lu();
            xl = -lu.solve(&c).ok_or(CwfError::PivotFailure { index: k })?;
            if keep {
                left.push(xl.clone());
            }
        }

        let mut xr = self.right_seed(e)?;
        let mut right = Vec::new();
        if keep {
            right.push(xr.clone());
        }
        for k in (m + 1..last).rev() {
            let (a, b, c) = self.blocks(k, e);
            let q = b + &c * &xr;
            det = det.mul(signed_log_det(&q));
            let lu = q.lu();
            xr = -lu.solve(&a).ok_or(CwfError::PivotFailure { index: k })?;
            if keep {
                right.push(xr.clone());
            }
        }
        if keep {
            right.reverse();
        }

        let (a, b, c) = self.blocks(m, e);
        let closure = &a * &xl + b + &c * &xr;
        det = det.mul(signed_log_det(&closure));
        Ok(Sweeps {
            left,
            right,
            det,
            closure,
        })
    }

    pub fn sweep(&self, e: f64) -> Result<ThomasReport> {
        let s = self.sweeps(e, false)?;
        Ok(ThomasReport {
            index: self.match_index,
            p: self.mesh[self.match_index],
            det: s.det,
            closure: s.closure,
        })
    }

    /// Weight functions reconstructed from the stored sweep blocks.
    pub fn chi_field(&self, e: f64) -> Result<ChiField> {
        let s = self.sweeps(e, true)?;
        let n = self.size();
        let m = self.match_index;
        let total = self.mesh.len();
        let mut values = vec![DVector::zeros(n); total];
        values[m] = smallest_right_singular(&s.closure)?;
        // left[k] maps χ_{k+1} to χ_k for k = 0..m−1.
        for k in (0..m).rev() {
            values[k] = &s.left[k] * &values[k + 1];
        }
        // right[j] maps χ_{m+j} to χ_{m+j+1}.
        for (j, x) in s.right.iter().enumerate() {
            values[m + j + 1] = x * &values[m + j];
        }
        let mut derivs = vec![DVector::zeros(n); total];
        for k in 0..total {
            derivs[k] = if k == 0 {
                (&values[1] - &values[0]) / self.d
            } else if k + 1 == total {
                (&values[k] - &values[k - 1]) / self.d
            } else {
                (&values[k + 1] - &values[k - 1]) / (2.0 * self.d)
            };
        }
        Ok(ChiField::new(self.mesh.clone(), values, derivs, e).max_norm_normalized())
    }
}

impl DetEvaluator for ThomasSolver {
    fn det(&self, e: f64) -> Result<SignedLog> {
        Ok(self.sweeps(e, false)?.det)
    }
}
