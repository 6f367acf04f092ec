//! Boundary-value eigenproblem for the configuration weight functions χ(p).
//!
//! With `t = 2s` the system
//!
//! ```text
//! −(t/2) χ'' − (t/p + u) χ' + (h + s/(Zp) − E s) χ = 0
//! ```
//!
//! is multiplied on the left by `(t/2)⁻¹`, giving
//! `χ'' = −K1 χ' + (G_h + (c/p − E) G_s) χ` with `c = 1/Z`.
//! The row-scaled coefficients are unchanged when all surface matrices are
//! multiplied by a common positive function of `p`.

mod energy;
mod ion;
mod rayleigh;
mod roots;
mod shooting;
mod thomas;

pub use energy::{find_energy, scan_energies, write_scan_csv, ChiField, DetEvaluator, EnergyResult};
pub use ion::{solve_ion, IonSolution, Method};
pub use rayleigh::rayleigh_energy;
pub use roots::{asymptotic_roots, roots_from_coefficients, track_roots, AsymptoticRoots, PhysicalRoot};
pub use shooting::{graded_mesh, matching_matrix, MatchReport, ShootingSolver, Trajectory};
pub use thomas::{ThomasReport, ThomasSolver};

use crate::error::{CwfError, Result};
use crate::surface_integrals::{SurfaceMatrices, SurfaceModel};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

/// Small-`p` law for the regular solution, `χ'(p_min) = κ χ(p_min)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuspLaw {
    /// `κ = 1/(2Z)`: the repulsion enters the scaled equation as `1/(Zp)`.
    EffectiveCharge,
    /// `κ = Z/2` with the bare nuclear charge.
    NuclearCharge,
}

impl CuspLaw {
    pub fn exponent(self, z: f64) -> f64 {
        match self {
            CuspLaw::EffectiveCharge => 0.5 / z,
            CuspLaw::NuclearCharge => 0.5 * z,
        }
    }
}

impl std::str::FromStr for CuspLaw {
    type Err = CwfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "effective" | "effective-charge" => Ok(CuspLaw::EffectiveCharge),
            "literal" | "nuclear" => Ok(CuspLaw::NuclearCharge),
            _ => Err(CwfError::Config(format!("unknown cusp law '{s}'"))),
        }
    }
}

/// Physical parameters of the equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equation {
    pub z: f64,
    /// Drop the `1/(Zp)` repulsion and the cusp exponent.
    pub interacting: bool,
    pub cusp: CuspLaw,
}

impl Equation {
    pub fn ion(z: f64) -> Self {
        Equation {
            z,
            interacting: true,
            cusp: CuspLaw::EffectiveCharge,
        }
    }

    pub fn non_interacting() -> Self {
        Equation {
            z: 1.0,
            interacting: false,
            cusp: CuspLaw::EffectiveCharge,
        }
    }

    /// Coefficient `c` of the `c/p` repulsion term.
    pub fn repulsion(&self) -> f64 {
        if self.interacting {
            1.0 / self.z
        } else {
            0.0
        }
    }

    pub fn cusp_exponent(&self) -> f64 {
        if self.interacting {
            self.cusp.exponent(self.z)
        } else {
            0.0
        }
    }
}

/// Mesh and search parameters shared by the solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub p_min: f64,
    pub p_max: f64,
    /// Largest shooting step; steps near `p_min` are graded down to `0.1 p`.
    pub step: f64,
    pub p_match: f64,
    pub renorm_every: usize,
    pub thomas_step: f64,
    pub scan_lo: f64,
    pub scan_hi: f64,
    pub scan_step: f64,
    pub tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            p_min: 1e-4,
            p_max: 40.0,
            step: 2e-3,
            p_match: 2.0,
            renorm_every: 200,
            thomas_step: 1e-2,
            scan_lo: -1.0,
            scan_hi: -0.48,
            scan_step: 2e-3,
            tol: 1e-9,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("p_min", self.p_min),
            ("step", self.step),
            ("thomas_step", self.thomas_step),
            ("scan_step", self.scan_step),
            ("tol", self.tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0) {
                return Err(CwfError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.p_max > self.p_min) {
            return Err(CwfError::Config("p_max must exceed p_min".into()));
        }
        if !(self.p_match > self.p_min && self.p_match < self.p_max) {
            return Err(CwfError::MatchOutsideMesh {
                p: self.p_match,
                lo: self.p_min,
                hi: self.p_max,
            });
        }
        if !(self.scan_hi > self.scan_lo) {
            return Err(CwfError::Config("scan_hi must exceed scan_lo".into()));
        }
        if self.renorm_every == 0 {
            return Err(CwfError::Config("renorm_every must be at least 1".into()));
        }
        Ok(())
    }
}

/// Determinant kept as sign and natural log of the magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub sign: f64,
    pub log_abs: f64,
}

impl SignedLog {
    pub const ONE: SignedLog = SignedLog {
        sign: 1.0,
        log_abs: 0.0,
    };

    pub fn from_value(v: f64) -> Self {
        if v == 0.0 {
            SignedLog {
                sign: 0.0,
                log_abs: f64::NEG_INFINITY,
            }
        } else {
            SignedLog {
                sign: v.signum(),
                log_abs: v.abs().ln(),
            }
        }
    }

    pub fn mul(self, other: SignedLog) -> Self {
        SignedLog {
            sign: self.sign * other.sign,
            log_abs: self.log_abs + other.log_abs,
        }
    }

    pub fn value(self) -> f64 {
        self.sign * self.log_abs.exp()
    }
}

/// Determinant of a square matrix by partial-pivot LU, in sign/log form.
pub fn signed_log_det(m: &DMatrix<f64>) -> SignedLog {
    let n = m.nrows();
    let mut a = m.clone();
    let mut acc = SignedLog::ONE;
    for k in 0..n {
        let (piv, val) = (k..n)
            .map(|r| (r, a[(r, k)].abs()))
            .fold((k, -1.0), |best, x| if x.1 > best.1 { x } else { best });
        if val == 0.0 {
            return SignedLog::from_value(0.0);
        }
        if piv != k {
            a.swap_rows(piv, k);
            acc.sign = -acc.sign;
        }
        let d = a[(k, k)];
        acc = acc.mul(SignedLog::from_value(d));
        for r in k + 1..n {
            let f = a[(r, k)] / d;
            if f != 0.0 {
                for c in k + 1..n {
                    let v = a[(k, c)];
                    a[(r, c)] -= f * v;
                }
            }
        }
    }
    acc
}

/// E-independent row-scaled coefficients at one separation.
#[derive(Debug, Clone)]
pub struct PointCoefficients {
    pub p: f64,
    pub k1: DMatrix<f64>,
    pub gh: DMatrix<f64>,
    pub gs: DMatrix<f64>,
    /// `sqrt(s_ii)` relative to the largest, for balancing and norms.
    pub weight: DVector<f64>,
}

impl PointCoefficients {
    /// Row-scale the surface matrices; `p` may be infinite (asymptotic limit).
    pub fn from_matrices(m: &SurfaceMatrices) -> Result<Self> {
        let n = m.size();
        let half_t = &m.t * 0.5;
        let diag: Vec<f64> = (0..n).map(|i| half_t[(i, i)]).collect();
        if diag.iter().any(|d| !(*d > 0.0)) {
            return Err(CwfError::DegenerateSurface { p: m.p });
        }
        // Equilibrate: (t/2)⁻¹ R = D (D (t/2) D)⁻¹ D R with D = diag(d_ii^{-1/2}).
        let dvec = DVector::from_iterator(n, diag.iter().map(|d| 1.0 / d.sqrt()));
        let scaled = DMatrix::from_fn(n, n, |i, j| half_t[(i, j)] * dvec[i] * dvec[j]);
        let lu = scaled.lu();
        let solve = |r: &DMatrix<f64>| -> Result<DMatrix<f64>> {
            let rhs = DMatrix::from_fn(n, n, |i, j| r[(i, j)] * dvec[i]);
            let x = lu.solve(&rhs).ok_or(CwfError::DegenerateSurface { p: m.p })?;
            Ok(DMatrix::from_fn(n, n, |i, j| x[(i, j)] * dvec[i]))
        };
        let drift = if m.p.is_infinite() {
            m.u.clone()
        } else {
            &m.t / m.p + &m.u
        };
        let k1 = solve(&drift)?;
        let gh = solve(&m.h)?;
        let gs = solve(&m.s)?;
        if k1.iter().chain(gh.iter()).chain(gs.iter()).any(|v| !v.is_finite()) {
            return Err(CwfError::DegenerateSurface { p: m.p });
        }
        let smax = (0..n).map(|i| m.s[(i, i)]).fold(0.0, f64::max);
        let weight = DVector::from_iterator(n, (0..n).map(|i| (m.s[(i, i)] / smax).sqrt()));
        Ok(PointCoefficients {
            p: m.p,
            k1,
            gh,
            gs,
            weight,
        })
    }

    /// `G_h + (c/p − E) G_s`.
    pub fn potential(&self, e: f64, repulsion: f64) -> DMatrix<f64> {
        let rep = if self.p.is_infinite() {
            0.0
        } else {
            repulsion / self.p
        };
        &self.gh + &self.gs * (rep - e)
    }

    pub fn size(&self) -> usize {
        self.k1.nrows()
    }
}

/// Evaluate row-scaled coefficients at many separations in parallel.
pub fn coefficients_at<M: SurfaceModel>(model: &M, ps: &[f64]) -> Result<Vec<PointCoefficients>> {
    ps.par_iter()
        .map(|&p| PointCoefficients::from_matrices(&model.matrices(p)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_log_det_matches_direct() {
        let m = DMatrix::from_row_slice(3, 3, &[0.0, 2.0, 1.0, 3.0, -1.0, 4.0, 1.0, 1.0, 1.0]);
        let d = signed_log_det(&m);
        let direct = m.determinant();
        assert!((d.value() - direct).abs() < 1e-12 * direct.abs());
        let z = signed_log_det(&DMatrix::zeros(2, 2));
        assert_eq!(z.sign, 0.0);
    }

    #[test]
    fn config_validation() {
        assert!(SolverConfig::default().validate().is_ok());
        let bad = SolverConfig {
            p_match: 50.0,
            ..SolverConfig::default()
        };
        assert!(matches!(bad.validate(), Err(CwfError::MatchOutsideMesh { .. })));
        let bad = SolverConfig {
            tol: 0.0,
            ..SolverConfig::default()
        };
        assert!(matches!(bad.validate(), Err(CwfError::Config(_))));
    }

    #[test]
    fn cusp_laws() {
        assert_eq!(CuspLaw::EffectiveCharge.exponent(2.0), 0.25);
        assert_eq!(CuspLaw::NuclearCharge.exponent(2.0), 1.0);
        assert_eq!("literal".parse::<CuspLaw>().unwrap(), CuspLaw::NuclearCharge);
        assert!("x".parse::<CuspLaw>().is_err());
    }
}
