//! Energy scan, bisection, and the reconstructed weight-function field.

use super::SignedLog;
use crate::error::{CwfError, Result};
use crate::surface_integrals::fmt_sig;
use nalgebra::DVector;
use rayon::prelude::*;
use std::io::Write;

/// Anything that maps a trial energy to a determinant whose zeros are eigenvalues.
pub trait DetEvaluator: Sync {
    fn det(&self, e: f64) -> Result<SignedLog>;
}

#[derive(Debug, Clone)]
pub struct EnergyResult {
    pub energy: f64,
    /// Number of sign changes seen in the scan.
    pub sign_changes: usize,
    pub bracket: (f64, f64),
    pub scan: Vec<(f64, SignedLog)>,
}

/// CSV of a determinant scan: `energy,sign,log_abs_det`.
pub fn write_scan_csv<W: Write>(out: &mut W, scan: &[(f64, SignedLog)]) -> Result<()> {
    writeln!(out, "energy,sign,log_abs_det")?;
    for (e, d) in scan {
        writeln!(out, "{},{},{}", fmt_sig(*e), d.sign, fmt_sig(d.log_abs))?;
    }
    Ok(())
}

/// Determinant at `lo, lo + step, …` up to `hi`, evaluated in parallel.
pub fn scan_energies<D: DetEvaluator>(d: &D, lo: f64, hi: f64, step: f64) -> Result<Vec<(f64, SignedLog)>> {
    if !(step > 0.0) || !(hi > lo) {
        return Err(CwfError::Domain(format!("bad scan [{lo}, {hi}] step {step}")));
    }
    let count = ((hi - lo) / step).floor() as usize + 1;
    (0..count)
        .into_par_iter()
        .map(|k| {
            let e = lo + k as f64 * step;
            d.det(e).map(|v| (e, v))
        })
        .collect()
}

/// Lowest eigenvalue in `[lo, hi]`: scan for a sign change, then bisect to `tol`.
pub fn find_energy<D: DetEvaluator>(d: &D, lo: f64, hi: f64, step: f64, tol: f64) -> Result<EnergyResult> {
    let scan = scan_energies(d, lo, hi, step)?;
    let changes: Vec<usize> = scan
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].1.sign * w[1].1.sign <= 0.0)
        .map(|(i, _)| i)
        .collect();
    let first = *changes.first().ok_or(CwfError::NoEigenvalue { lo, hi })?;
    let (mut a, mut b) = (scan[first].0, scan[first + 1].0);
    let mut sa = scan[first].1.sign;
    if sa == 0.0 {
        b = a;
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let sm = d.det(mid)?.sign;
        if sm == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if sm == sa {
            a = mid;
            sa = sm;
        } else {
            b = mid;
        }
    }
    Ok(EnergyResult {
        energy: 0.5 * (a + b),
        sign_changes: changes.len(),
        bracket: (scan[first].0, scan[first + 1].0),
        scan,
    })
}

/// Weight functions `χ(p)` and derivatives on a mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiField {
    pub mesh: Vec<f64>,
    pub values: Vec<DVector<f64>>,
    pub derivs: Vec<DVector<f64>>,
    pub energy: f64,
}

impl ChiField {
    pub fn new(mesh: Vec<f64>, values: Vec<DVector<f64>>, derivs: Vec<DVector<f64>>, energy: f64) -> Self {
        ChiField {
            mesh,
            values,
            derivs,
            energy,
        }
    }

    pub fn size(&self) -> usize {
        self.values.first().map_or(0, |v| v.len())
    }

    fn scaled(mut self, f: f64) -> Self {
        for v in self.values.iter_mut().chain(self.derivs.iter_mut()) {
            *v *= f;
        }
        self
    }

    /// Largest component magnitude 1, with `χ_1(p_min) ≥ 0`.
    pub fn max_norm_normalized(self) -> Self {
        let max = self
            .values
            .iter()
            .flat_map(|v| v.iter())
            .fold(0.0f64, |m, x| m.max(x.abs()));
        if max == 0.0 {
            return self;
        }
        let sign = if self.values[0][0] < 0.0 { -1.0 } else { 1.0 };
        self.scaled(sign / max)
    }

    /// Scaled so that `χ_1(p_min) = 1`.
    pub fn normalized_at_start(self) -> Result<Self> {
        let v = self.values.first().map(|v| v[0]).ok_or(CwfError::ZeroNorm)?;
        if v == 0.0 {
            return Err(CwfError::ZeroNorm);
        }
        Ok(self.scaled(1.0 / v))
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .chain(&self.derivs)
            .all(|v| v.iter().all(|x| x.is_finite()))
    }

    /// CSV with columns `p, chi1, …`, every `stride`-th mesh point plus the last.
    pub fn write_csv<W: Write>(&self, out: &mut W, stride: usize) -> Result<()> {
        let n = self.size();
        let mut header = vec!["p".to_string()];
        header.extend((1..=n).map(|i| format!("chi{i}")));
        writeln!(out, "{}", header.join(","))?;
        let stride = stride.max(1);
        let last = self.mesh.len() - 1;
        for (k, p) in self.mesh.iter().enumerate() {
            if k % stride != 0 && k != last {
                continue;
            }
            let mut row = vec![fmt_sig(*p)];
            row.extend(self.values[k].iter().map(|v| fmt_sig(*v)));
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Linear(f64);

    impl DetEvaluator for Linear {
        fn det(&self, e: f64) -> Result<SignedLog> {
            Ok(SignedLog::from_value((e - self.0) * (e - self.0 - 0.1)))
        }
    }

    #[test]
    fn bisection_finds_lowest_root() {
        let r = find_energy(&Linear(-0.7123456789), -1.0, -0.4, 2e-3, 1e-10).unwrap();
        assert!((r.energy + 0.7123456789).abs() < 1e-9);
        assert_eq!(r.sign_changes, 2);
    }

    #[test]
    fn no_root_reported() {
        let r = find_energy(&Linear(0.5), -1.0, -0.4, 2e-3, 1e-10);
        assert!(matches!(r, Err(CwfError::NoEigenvalue { .. })));
    }

    #[test]
    fn csv_layout() {
        let chi = ChiField::new(
            vec![0.0, 1.0, 2.0],
            vec![DVector::from_vec(vec![1.0, 2.0]); 3],
            vec![DVector::zeros(2); 3],
            -0.5,
        );
        let mut buf = Vec::new();
        chi.write_csv(&mut buf, 2).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "p,chi1,chi2");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0.00000000000e0,1.00000000000e0"));
    }

    #[test]
    fn scan_csv_layout() {
        let scan = scan_energies(&Linear(0.25), 0.0, 0.5, 0.25).unwrap();
        let mut buf = Vec::new();
        write_scan_csv(&mut buf, &scan).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "energy,sign,log_abs_det");
        assert_eq!(lines.len(), scan.len() + 1);
    }
}
