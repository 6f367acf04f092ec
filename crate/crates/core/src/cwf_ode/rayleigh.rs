//! Energy expectation of a weight-function field.

use super::energy::ChiField;
use super::Equation;
use crate::error::{CwfError, Result};
use crate::surface_integrals::SurfaceMatrices;

/// `∫ [χ'ᵀ s χ' + χᵀ ((uᵀ − u)/2) χ' + χᵀ (h + s c/p) χ] dp / ∫ χᵀ s χ dp`.
///
/// The kinetic term is integrated by parts using `s' = 2s/p + (u + uᵀ)/2`,
/// which holds for the standard surface measure. Trapezoid rule on the field mesh.
pub fn rayleigh_energy(chi: &ChiField, matrices: &[SurfaceMatrices], eq: &Equation) -> Result<f64> {
    if matrices.len() != chi.mesh.len() {
        return Err(CwfError::Domain(format!(
            "{} matrices for {} mesh points",
            matrices.len(),
            chi.mesh.len()
        )));
    }
    let c = eq.repulsion();
    let pointwise: Vec<(f64, f64)> = matrices
        .iter()
        .zip(chi.values.iter().zip(&chi.derivs))
        .map(|(m, (x, dx))| {
            let anti = (m.u.transpose() - &m.u) * 0.5;
            let pot = &m.h + &m.s * (c / m.p);
            let num = dx.dot(&(&m.s * dx)) + x.dot(&(anti * dx)) + x.dot(&(pot * x));
            let den = x.dot(&(&m.s * x));
            (num, den)
        })
        .collect();
    let (mut num, mut den) = (0.0, 0.0);
    for k in 1..chi.mesh.len() {
        let h = 0.5 * (chi.mesh[k] - chi.mesh[k - 1]);
        num += h * (pointwise[k].0 + pointwise[k - 1].0);
        den += h * (pointwise[k].1 + pointwise[k - 1].1);
    }
    if den == 0.0 || !den.is_finite() {
        return Err(CwfError::ZeroNorm);
    }
    Ok(num / den)
}
