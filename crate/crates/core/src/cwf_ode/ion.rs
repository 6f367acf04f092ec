//! One-call driver: surface model + solver + energy search for a He-like ion.

use super::energy::{find_energy, ChiField};
use super::shooting::ShootingSolver;
use super::thomas::ThomasSolver;
use super::{Equation, SolverConfig};
use crate::error::{CwfError, Result};
use crate::surface_integrals::SurfaceModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Shooting,
    Thomas,
}

impl std::str::FromStr for Method {
    type Err = CwfError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shooting" => Ok(Method::Shooting),
            "thomas" => Ok(Method::Thomas),
            _ => Err(CwfError::Config(format!("unknown solver '{s}'"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Shooting => "shooting",
            Method::Thomas => "thomas",
        })
    }
}

#[derive(Debug, Clone)]
pub struct IonSolution {
    pub z: f64,
    pub method: Method,
    /// Scaled hartree.
    pub energy: f64,
    pub sign_changes: usize,
    pub chi: Option<ChiField>,
}

impl IonSolution {
    /// Hartree: `Z² · E_scaled`.
    pub fn energy_au(&self) -> f64 {
        self.z * self.z * self.energy
    }
}

/// Lowest eigenvalue in the configured scan bracket, optionally with `χ`.
pub fn solve_ion<M: SurfaceModel>(
    model: &M,
    eq: Equation,
    method: Method,
    config: &SolverConfig,
    with_chi: bool,
) -> Result<IonSolution> {
    let (energy, sign_changes, chi) = match method {
        Method::Shooting => {
            let s = ShootingSolver::new(model, eq, config.clone())?;
            let r = find_energy(&s, config.scan_lo, config.scan_hi, config.scan_step, config.tol)?;
            let chi = if with_chi { Some(s.chi_field(r.energy)?) } else { None };
            (r.energy, r.sign_changes, chi)
        }
        Method::Thomas => {
            let s = ThomasSolver::new(model, eq, config.clone())?;
            let r = find_energy(&s, config.scan_lo, config.scan_hi, config.scan_step, config.tol)?;
            let chi = if with_chi { Some(s.chi_field(r.energy)?) } else { None };
            (r.energy, r.sign_changes, chi)
        }
    };
    if sign_changes > 1 {
        log::info!("{sign_changes} sign changes in scan; returning the lowest root");
    }
    Ok(IonSolution {
        z: eq.z,
        method,
        energy,
        sign_changes,
        chi,
    })
}
