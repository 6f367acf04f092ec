//! One-electron orbitals, two-electron configurations and the discrete sine
//! basis of the infinite well.
//!
//! Everything here works in charge-scaled units: lengths are multiples of
//! a.u./Z and energies multiples of a.u.·Z², so the nuclear attraction is
//! `-1/r` for every ion.

use crate::error::{CwfError, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Largest principal quantum number carried by [`Orbital`].
pub const MAX_ORBITAL: usize = 4;

/// Hydrogenic `ns` radial function, normalized so that `∫ φ² r² dr = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orbital {
    n: usize,
}

impl Orbital {
    pub fn new(n: usize) -> Result<Self> {
        if (1..=MAX_ORBITAL).contains(&n) {
            Ok(Orbital { n })
        } else {
            Err(CwfError::InvalidBasis {
                index: n,
                max: MAX_ORBITAL,
            })
        }
    }

    pub fn principal_index(&self) -> usize {
        self.n
    }

    /// Exponential decay rate `1/n`.
    pub fn decay(&self) -> f64 {
        1.0 / self.n as f64
    }

    /// One-electron energy `-1/(2n²)`.
    pub fn energy(&self) -> f64 {
        -0.5 / (self.n * self.n) as f64
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self.n {
            1 => 2.0 * (-r).exp(),
            2 => FRAC_1_SQRT_2 * (1.0 - 0.5 * r) * (-0.5 * r).exp(),
            3 => {
                let c = 2.0 / 27f64.sqrt();
                c * (1.0 - 2.0 * r / 3.0 + 2.0 * r * r / 27.0) * (-r / 3.0).exp()
            }
            _ => {
                let r2 = r * r;
                0.25 * (1.0 - 0.75 * r + r2 / 8.0 - r2 * r / 192.0) * (-0.25 * r).exp()
            }
        }
    }

    /// `dφ/dr`, differentiated by hand.
    pub fn deriv(&self, r: f64) -> f64 {
        match self.n {
            1 => -2.0 * (-r).exp(),
            2 => FRAC_1_SQRT_2 * (0.25 * r - 1.0) * (-0.5 * r).exp(),
            3 => {
                let c = 2.0 / 27f64.sqrt();
                c * (-1.0 + 10.0 * r / 27.0 - 2.0 * r * r / 81.0) * (-r / 3.0).exp()
            }
            _ => {
                let r2 = r * r;
                0.25 * (-1.0 + 7.0 * r / 16.0 - 3.0 * r2 / 64.0 + r2 * r / 768.0)
                    * (-0.25 * r).exp()
            }
        }
    }

    /// Polynomial prefactor coefficients `c_k` of `φ(r) = Σ c_k r^k e^{-r/n}`.
    pub fn polynomial(&self) -> Vec<f64> {
        match self.n {
            1 => vec![2.0],
            2 => vec![FRAC_1_SQRT_2, -0.5 * FRAC_1_SQRT_2],
            3 => {
                let c = 2.0 / 27f64.sqrt();
                vec![c, -2.0 * c / 3.0, 2.0 * c / 27.0]
            }
            _ => vec![0.25, -0.25 * 0.75, 0.25 / 8.0, -0.25 / 192.0],
        }
    }
}

/// The lowest `n_f` symmetric `1s·ns` configurations of two electrons.
///
/// `Φ_i(r1, r2) = [φ1(r1)φi(r2) + φ1(r2)φi(r1)] / sqrt(2(δ_{1i} + 1))`
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationBasis {
    orbitals: Vec<Orbital>,
}

impl ConfigurationBasis {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_ORBITAL {
            return Err(CwfError::InvalidBasis {
                index: size,
                max: MAX_ORBITAL,
            });
        }
        let orbitals = (1..=size).map(Orbital::new).collect::<Result<Vec<_>>>()?;
        Ok(ConfigurationBasis { orbitals })
    }

    pub fn size(&self) -> usize {
        self.orbitals.len()
    }

    fn check(&self, i: usize) -> Result<()> {
        if (1..=self.size()).contains(&i) {
            Ok(())
        } else {
            Err(CwfError::InvalidBasis {
                index: i,
                max: self.size(),
            })
        }
    }

    /// Orbital paired with `1s` in configuration `i` (1-based).
    pub fn partner(&self, i: usize) -> Result<Orbital> {
        self.check(i)?;
        Ok(self.orbitals[i - 1])
    }

    pub fn normalization(i: usize) -> f64 {
        let delta: f64 = if i == 1 { 1.0 } else { 0.0 };
        1.0 / (2.0 * (delta + 1.0)).sqrt()
    }

    pub fn config_eval(&self, i: usize, r1: f64, r2: f64) -> Result<f64> {
        let oi = self.partner(i)?;
        let o1 = self.orbitals[0];
        Ok(Self::normalization(i) * (o1.eval(r1) * oi.eval(r2) + o1.eval(r2) * oi.eval(r1)))
    }

    /// `∂Φ_i/∂r1`.
    pub fn config_deriv_r1(&self, i: usize, r1: f64, r2: f64) -> Result<f64> {
        let oi = self.partner(i)?;
        let o1 = self.orbitals[0];
        Ok(Self::normalization(i) * (o1.deriv(r1) * oi.eval(r2) + o1.eval(r2) * oi.deriv(r1)))
    }

    /// `∂Φ_i/∂r2`.
    pub fn config_deriv_r2(&self, i: usize, r1: f64, r2: f64) -> Result<f64> {
        self.config_deriv_r1(i, r2, r1)
    }

    /// Non-interacting energy `ε_i = -1/2 - 1/(2i²)`.
    pub fn config_energy(&self, i: usize) -> Result<f64> {
        let oi = self.partner(i)?;
        Ok(self.orbitals[0].energy() + oi.energy())
    }

    pub fn energies(&self) -> Vec<f64> {
        (1..=self.size())
            .map(|i| self.config_energy(i).expect("index in range"))
            .collect()
    }
}

/// Standalone helpers mirroring the basis operations for a fixed index.
pub fn orbital_eval(n: usize, r: f64) -> Result<f64> {
    Ok(Orbital::new(n)?.eval(r))
}

pub fn orbital_deriv(n: usize, r: f64) -> Result<f64> {
    Ok(Orbital::new(n)?.deriv(r))
}

pub fn config_energy(i: usize) -> Result<f64> {
    ConfigurationBasis::new(MAX_ORBITAL)?.config_energy(i)
}

/// Sine modes of the discrete infinite well with `N` interior points.
///
/// Grid points are `x_j = j·δx`, `j = 1..=N`, with `δx = π/(N+1)`; the wave
/// function vanishes at the implicit points `j = 0` and `j = N+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineBasis {
    points: usize,
}

impl SineBasis {
    pub fn new(points: usize) -> Result<Self> {
        if points < 2 {
            return Err(CwfError::Domain(format!(
                "well needs at least 2 interior points, got {points}"
            )));
        }
        Ok(SineBasis { points })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> f64 {
        PI / (self.points + 1) as f64
    }

    /// `ψ_i(x_j)` for mode `i` in `1..=N` and grid index `j` in `1..=N`.
    pub fn value(&self, mode: usize, j: usize) -> f64 {
        let x = j as f64 * self.step();
        (2.0 / PI).sqrt() * (mode as f64 * x).sin()
    }

    /// Mode `i` sampled on the interior grid, scaled to unit Euclidean norm.
    pub fn grid_vector(&self, mode: usize) -> Vec<f64> {
        let w = self.step().sqrt();
        (1..=self.points).map(|j| w * self.value(mode, j)).collect()
    }

    /// Eigenvalue of the three-point stencil `(2ψ_j - ψ_{j+1} - ψ_{j-1})/δx²`.
    pub fn kinetic_eigenvalue(&self, mode: usize) -> f64 {
        let dx = self.step();
        (2.0 - 2.0 * (mode as f64 * dx).cos()) / (dx * dx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radial_norm(o: Orbital) -> f64 {
        crate::quadrature::integrate_adaptive(|r| o.eval(r).powi(2) * r * r, 0.0, 200.0, 1e-14)
    }

    #[test]
    fn orbital_values_at_origin() {
        assert_eq!(orbital_eval(1, 0.0).unwrap(), 2.0);
        assert!((orbital_eval(2, 0.0).unwrap() - 0.707_106_781_186_547_5).abs() < 1e-15);
        assert_eq!(orbital_eval(2, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn orbital_out_of_range() {
        assert!(matches!(
            orbital_eval(5, 1.0),
            Err(CwfError::InvalidBasis { index: 5, .. })
        ));
        assert!(orbital_eval(0, 1.0).is_err());
    }

    #[test]
    fn orbitals_are_normalized() {
        for n in 1..=4 {
            let norm = radial_norm(Orbital::new(n).unwrap());
            assert!((norm - 1.0).abs() < 1e-12, "n={n} norm={norm}");
        }
    }

    #[test]
    fn orbitals_have_n_minus_one_nodes() {
        for n in 1..=4 {
            let o = Orbital::new(n).unwrap();
            let mut nodes = 0;
            let mut prev = o.eval(1e-6);
            let mut r = 1e-6;
            while r < 120.0 {
                r += 1e-3;
                let v = o.eval(r);
                if v.signum() != prev.signum() && v.abs() > 1e-300 {
                    nodes += 1;
                }
                prev = v;
            }
            assert_eq!(nodes, n - 1, "n={n}");
        }
    }

    #[test]
    fn derivatives_match_central_differences() {
        let h = 1e-5;
        for n in 1..=4 {
            let o = Orbital::new(n).unwrap();
            for &r in &[0.1, 1.0, 5.0, 20.0] {
                let fd = (o.eval(r + h) - o.eval(r - h)) / (2.0 * h);
                let d = o.deriv(r);
                assert!((fd - d).abs() <= 1e-6 * d.abs(), "n={n} r={r} fd={fd} d={d}");
            }
        }
    }

    #[test]
    fn polynomial_matches_eval() {
        for n in 1..=4 {
            let o = Orbital::new(n).unwrap();
            for &r in &[0.0f64, 0.7, 3.0, 11.0] {
                let poly: f64 = o
                    .polynomial()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * r.powi(k as i32))
                    .sum();
                let v = poly * (-o.decay() * r).exp();
                assert!((v - o.eval(r)).abs() < 1e-15, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn configuration_energies() {
        assert_eq!(config_energy(1).unwrap(), -1.0);
        assert_eq!(config_energy(2).unwrap(), -0.625);
        assert_eq!(config_energy(4).unwrap(), -0.53125);
        assert!(config_energy(5).is_err());
    }

    #[test]
    fn config_diagonal_for_1s1s() {
        let b = ConfigurationBasis::new(4).unwrap();
        for &r in &[0.0, 0.3, 2.5] {
            let phi = orbital_eval(1, r).unwrap();
            assert!((b.config_eval(1, r, r).unwrap() - phi * phi).abs() < 1e-15);
        }
    }

    #[test]
    fn config_symmetric_under_exchange() {
        let b = ConfigurationBasis::new(4).unwrap();
        for i in 1..=4 {
            for &(a, c) in &[(0.2, 3.1), (1.5, 0.4), (7.0, 2.2)] {
                let x = b.config_eval(i, a, c).unwrap();
                let y = b.config_eval(i, c, a).unwrap();
                assert!((x - y).abs() < 1e-15);
                let d1 = b.config_deriv_r1(i, a, c).unwrap();
                let d2 = b.config_deriv_r2(i, c, a).unwrap();
                assert!((d1 - d2).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn configurations_orthonormal_over_whole_space() {
        // ∫∫ Φ_i Φ_j r1² r2² dr1 dr2 factorizes into orbital overlaps.
        let b = ConfigurationBasis::new(4).unwrap();
        let ov = |a: Orbital, c: Orbital| {
            crate::quadrature::integrate_adaptive(
                |r| a.eval(r) * c.eval(r) * r * r,
                0.0,
                250.0,
                1e-15,
            )
        };
        let orb: Vec<Orbital> = (1..=4).map(|n| Orbital::new(n).unwrap()).collect();
        for i in 1..=4 {
            for j in 1..=4 {
                let (a, c) = (orb[0], orb[i - 1]);
                let (d, e) = (orb[0], orb[j - 1]);
                let g = ConfigurationBasis::normalization(i)
                    * ConfigurationBasis::normalization(j)
                    * (2.0 * ov(a, d) * ov(c, e) + 2.0 * ov(a, e) * ov(c, d));
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-12, "({i},{j}) = {g}");
            }
        }
        assert!(b.config_eval(5, 0.0, 0.0).is_err());
    }

    #[test]
    fn sine_basis_is_orthonormal_and_diagonalizes_stencil() {
        let sb = SineBasis::new(8).unwrap();
        let n = sb.points();
        let dx = sb.step();
        for i in 1..=n {
            for k in 1..=n {
                let dot: f64 = (1..=n).map(|j| sb.value(i, j) * sb.value(k, j) * dx).sum();
                let want = if i == k { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
            let lam = sb.kinetic_eigenvalue(i);
            for j in 1..=n {
                let left = if j > 1 { sb.value(i, j - 1) } else { 0.0 };
                let right = if j < n { sb.value(i, j + 1) } else { 0.0 };
                let applied = (2.0 * sb.value(i, j) - left - right) / (dx * dx);
                assert!((applied - lam * sb.value(i, j)).abs() < 1e-10);
            }
        }
        assert!(SineBasis::new(1).is_err());
    }
}
