//! Per-separation matrices `s(p)`, `t(p)`, `u(p)`, `h(p)` for He-like ions.
//!
//! A matrix element averages over all electron pairs at fixed separation
//! `p = |r⃗1 − r⃗2|`. For s-configurations the six-dimensional volume element
//! reduces to `8π² r1 r2 p dr1 dr2 dp`; with radially normalized orbitals the
//! constant becomes `1/2`, which makes `∫ s(p) dp` the whole-space overlap:
//!
//! ```text
//! s_ij(p) = p/2 ∫∫_{|r1−r2| ≤ p ≤ r1+r2} r1 r2 Φ_i Φ_j dr1 dr2
//! ```
//!
//! The closed-form path changes variables to `σ = r1 + r2`, `τ = r1 − r2`.
//! The integration region becomes the rectangle `σ ≥ p`, `|τ| ≤ p`, and
//! every integrand is a sum of `σ^m τ^n e^{−γσ−δτ}` terms whose two factors
//! are summed without cancellation (see [`sigma_integral`] and
//! [`tau_integral`]). The quadrature path integrates the original `r1, r2`
//! form numerically and serves as the independent check.

use crate::basis::{ConfigurationBasis, Orbital};
use crate::error::{CwfError, Result};
use crate::quadrature::integrate_adaptive;
use nalgebra::DMatrix;
use std::collections::BTreeMap;
use std::io::Write;

/// The four surface matrices at one separation.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMatrices {
    pub p: f64,
    pub s: DMatrix<f64>,
    pub t: DMatrix<f64>,
    pub u: DMatrix<f64>,
    pub h: DMatrix<f64>,
}

impl SurfaceMatrices {
    /// Assemble from `s` and `u`, deriving `t = 2s` and `h_ij = ε_j s_ij`.
    pub fn from_overlap(p: f64, s: DMatrix<f64>, u: DMatrix<f64>, energies: &[f64]) -> Self {
        let t = &s * 2.0;
        let h = h_matrix(&s, energies);
        SurfaceMatrices { p, s, t, u, h }
    }

    pub fn size(&self) -> usize {
        self.s.nrows()
    }

    /// Multiply all four matrices by the same factor.
    pub fn scaled(&self, g: f64) -> Self {
        SurfaceMatrices {
            p: self.p,
            s: &self.s * g,
            t: &self.t * g,
            u: &self.u * g,
            h: &self.h * g,
        }
    }
}

/// Source of surface matrices as a function of the separation `p`.
pub trait SurfaceModel: Sync {
    fn size(&self) -> usize;
    fn matrices(&self, p: f64) -> Result<SurfaceMatrices>;
}

/// `h_ij = ε_j s_ij`: the non-interacting Hamiltonian acts on `Φ_j` pointwise.
pub fn h_matrix(s: &DMatrix<f64>, energies: &[f64]) -> DMatrix<f64> {
    let mut h = s.clone();
    for (j, &e) in energies.iter().enumerate().take(s.ncols()) {
        h.column_mut(j).scale_mut(e);
    }
    h
}

fn check_separation(p: f64) -> Result<()> {
    if p > 0.0 && !p.is_nan() {
        Ok(())
    } else {
        Err(CwfError::Domain(format!("separation must be positive, got {p}")))
    }
}

/// `∫_0^L y^k e^{−a y} dy` for `a > 0`, summed with positive terms only.
fn lower_gamma(k: u32, a: f64, len: f64) -> f64 {
    let x = a * len;
    let kf = k as f64;
    if x <= kf + 1.0 {
        // L^{k+1} e^{−x} Σ_j x^j / ((k+1)(k+2)…(k+1+j))
        let mut term = 1.0 / (kf + 1.0);
        let mut sum = term;
        let mut j = 1.0;
        loop {
            term *= x / (kf + 1.0 + j);
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
            j += 1.0;
        }
        len.powi(k as i32 + 1) * (-x).exp() * sum
    } else {
        let full = factorial(k) / a.powi(k as i32 + 1);
        full - upper_gamma(k, a, len)
    }
}

/// `∫_x^∞ y^k e^{−a y} dy` via `U_k = (x^k e^{−ax} + k U_{k−1})/a`.
fn upper_gamma(k: u32, a: f64, x: f64) -> f64 {
    let e = (-a * x).exp();
    let mut acc = e / a;
    let mut xp = 1.0;
    for m in 1..=k {
        xp *= x;
        acc = (xp * e + m as f64 * acc) / a;
    }
    acc
}

fn factorial(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, v| acc * v as f64)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `∫_{x0}^{x1} r^k e^{−a r} dr` with `x1` possibly infinite.
///
/// Shifting `r = x0 + y` turns the integrand into a positive combination of
/// lower incomplete gamma integrals, so no subtraction of nearly equal
/// antiderivative values occurs.
pub fn closed_form_integral(k: u32, a: f64, x0: f64, x1: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(CwfError::Domain(format!("decay rate must be positive, got {a}")));
    }
    if !(x0 >= 0.0) || !(x1 >= x0) {
        return Err(CwfError::Domain(format!(
            "need 0 <= x0 <= x1, got x0 = {x0}, x1 = {x1}"
        )));
    }
    let len = x1 - x0;
    let mut sum = 0.0;
    for i in 0..=k {
        let part = if len.is_infinite() {
            factorial(i) / a.powi(i as i32 + 1)
        } else {
            lower_gamma(i, a, len)
        };
        sum += binomial(k, i) * x0.powi((k - i) as i32) * part;
    }
    Ok((-a * x0).exp() * sum)
}

/// `∫_p^∞ σ^m e^{−γσ} dσ`.
pub fn sigma_integral(m: u32, gamma: f64, p: f64) -> f64 {
    upper_gamma(m, gamma, p)
}

/// `∫_{−p}^{p} τ^n e^{−δτ} dτ = 2p^{n+1} Σ_{k≡n (2)} (−δp)^k / (k!(n+k+1))`.
///
/// For a fixed parity of `k` all terms share one sign.
pub fn tau_integral(n: u32, delta: f64, p: f64) -> f64 {
    let x = -delta * p;
    let nf = n as f64;
    let mut term = 1.0; // x^k / k!
    let mut sum = 0.0;
    let mut k = 0u32;
    loop {
        if (k + n).is_multiple_of(2) {
            let c = term / (nf + k as f64 + 1.0);
            sum += c;
            if k as f64 > x.abs() && c.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        if x == 0.0 && k >= 1 {
            break;
        }
        k += 1;
        term *= x / k as f64;
        if k > 2000 {
            break;
        }
    }
    2.0 * p.powi(n as i32 + 1) * sum
}

// Decay rates are sums of 1, 1/2, 1/3, 1/4; exact keys use units of 1/24.
const RATE_UNITS: f64 = 24.0;

fn rate_key(rate: f64) -> i64 {
    (rate * RATE_UNITS).round() as i64
}

/// `coef · p^pp · r1^a · r2^b · e^{−α r1 − β r2}` with rates in 1/24 units.
#[derive(Debug, Clone, Copy)]
struct RadialTerm {
    coef: f64,
    pp: u32,
    a: u32,
    b: u32,
    alpha: i64,
    beta: i64,
}

fn orbital_terms(o: Orbital) -> Vec<(f64, u32)> {
    o.polynomial()
        .into_iter()
        .enumerate()
        .map(|(k, c)| (c, k as u32))
        .collect()
}

fn orbital_deriv_terms(o: Orbital) -> Vec<(f64, u32)> {
    let poly = o.polynomial();
    let mut out = vec![0.0; poly.len()];
    for (k, &c) in poly.iter().enumerate() {
        out[k] -= o.decay() * c;
        if k > 0 {
            out[k - 1] += k as f64 * c;
        }
    }
    out.into_iter()
        .enumerate()
        .map(|(k, c)| (c, k as u32))
        .collect()
}

fn product(
    f: &[(f64, u32)],
    fa: f64,
    g: &[(f64, u32)],
    ga: f64,
    scale: f64,
) -> Vec<RadialTerm> {
    let mut out = Vec::new();
    for &(c1, k1) in f {
        for &(c2, k2) in g {
            out.push(RadialTerm {
                coef: scale * c1 * c2,
                pp: 0,
                a: k1,
                b: k2,
                alpha: rate_key(fa),
                beta: rate_key(ga),
            });
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Slot {
    Value,
    DerivR1,
    DerivR2,
}

/// `Φ_i`, `∂Φ_i/∂r1` or `∂Φ_i/∂r2` as a sum of radial terms.
fn config_terms(basis: &ConfigurationBasis, i: usize, slot: Slot) -> Vec<RadialTerm> {
    let o1 = basis.partner(1).expect("1s present");
    let oi = basis.partner(i).expect("index checked");
    let n = ConfigurationBasis::normalization(i);
    let (v1, vi) = (orbital_terms(o1), orbital_terms(oi));
    let (d1, di) = (orbital_deriv_terms(o1), orbital_deriv_terms(oi));
    let (a1, ai) = (o1.decay(), oi.decay());
    let mut out = Vec::new();
    match slot {
        Slot::Value => {
            out.extend(product(&v1, a1, &vi, ai, n));
            out.extend(product(&vi, ai, &v1, a1, n));
        }
        Slot::DerivR1 => {
            out.extend(product(&d1, a1, &vi, ai, n));
            out.extend(product(&di, ai, &v1, a1, n));
        }
        Slot::DerivR2 => {
            out.extend(product(&v1, a1, &di, ai, n));
            out.extend(product(&vi, ai, &d1, a1, n));
        }
    }
    out
}

fn multiply(x: &[RadialTerm], y: &[RadialTerm]) -> Vec<RadialTerm> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for s in x {
        for t in y {
            out.push(RadialTerm {
                coef: s.coef * t.coef,
                pp: s.pp + t.pp,
                a: s.a + t.a,
                b: s.b + t.b,
                alpha: s.alpha + t.alpha,
                beta: s.beta + t.beta,
            });
        }
    }
    out
}

fn monomial(coef: f64, pp: u32, a: u32, b: u32) -> RadialTerm {
    RadialTerm {
        coef,
        pp,
        a,
        b,
        alpha: 0,
        beta: 0,
    }
}

/// Key: (p power, σ power, τ power, γ in 1/48 units, δ in 1/48 units).
type SepKey = (u32, u32, u32, i64, i64);

/// Rewrite `∫∫ dr1 dr2` terms as `½ ∫dσ ∫dτ σ^m τ^n e^{−γσ−δτ}` terms.
fn separate(terms: &[RadialTerm]) -> BTreeMap<SepKey, f64> {
    let mut out: BTreeMap<SepKey, f64> = BTreeMap::new();
    for t in terms {
        // r1 = (σ+τ)/2, r2 = (σ−τ)/2, α r1 + β r2 = γσ + δτ with γ = (α+β)/2.
        let gamma = t.alpha + t.beta;
        let delta = t.alpha - t.beta;
        let scale = 0.5 * t.coef / 2f64.powi((t.a + t.b) as i32);
        for i in 0..=t.a {
            for j in 0..=t.b {
                let sign = if (t.b - j) % 2 == 0 { 1.0 } else { -1.0 };
                let c = scale * binomial(t.a, i) * binomial(t.b, j) * sign;
                let m = i + j;
                let n = (t.a - i) + (t.b - j);
                *out.entry((t.pp, m, n, gamma, delta)).or_insert(0.0) += c;
            }
        }
    }
    out.retain(|_, c| *c != 0.0);
    out
}

#[derive(Debug, Clone)]
struct SeparatedElement {
    terms: Vec<(SepKey, f64)>,
}

/// Closed-form evaluator of the surface matrices for a configuration basis.
#[derive(Debug, Clone)]
pub struct ClosedFormSurface {
    basis: ConfigurationBasis,
    energies: Vec<f64>,
    s_elems: Vec<SeparatedElement>,
    u_elems: Vec<SeparatedElement>,
    gammas: Vec<i64>,
    deltas: Vec<i64>,
    max_m: u32,
    max_n: u32,
}

const PAIR_UNITS: f64 = 2.0 * RATE_UNITS;

impl ClosedFormSurface {
    pub fn new(basis: &ConfigurationBasis) -> Self {
        let nf = basis.size();
        let mut s_elems = Vec::with_capacity(nf * nf);
        let mut u_elems = Vec::with_capacity(nf * nf);
        // u weights: ½ p r1 r2 times the projections of ∇p onto r̂1 and r̂2.
        let w1 = [
            monomial(0.25, 2, 0, 1),
            monomial(0.25, 0, 2, 1),
            monomial(-0.25, 0, 0, 3),
        ];
        let w2 = [
            monomial(0.25, 2, 1, 0),
            monomial(-0.25, 0, 3, 0),
            monomial(0.25, 0, 1, 2),
        ];
        let half_r1r2 = [monomial(0.5, 1, 1, 1)];
        for i in 1..=nf {
            let phi_i = config_terms(basis, i, Slot::Value);
            for j in 1..=nf {
                let phi_j = config_terms(basis, j, Slot::Value);
                let s_terms = multiply(&half_r1r2, &multiply(&phi_i, &phi_j));
                let d1 = multiply(&w1, &multiply(&phi_i, &config_terms(basis, j, Slot::DerivR1)));
                let d2 = multiply(&w2, &multiply(&phi_i, &config_terms(basis, j, Slot::DerivR2)));
                let mut u_terms = d1;
                u_terms.extend(d2);
                s_elems.push(SeparatedElement {
                    terms: separate(&s_terms).into_iter().collect(),
                });
                u_elems.push(SeparatedElement {
                    terms: separate(&u_terms).into_iter().collect(),
                });
            }
        }
        let mut gammas: Vec<i64> = Vec::new();
        let mut deltas: Vec<i64> = Vec::new();
        let (mut max_m, mut max_n) = (0, 0);
        for e in s_elems.iter().chain(&u_elems) {
            for &((_, m, n, g, d), _) in &e.terms {
                gammas.push(g);
                deltas.push(d);
                max_m = max_m.max(m);
                max_n = max_n.max(n);
            }
        }
        gammas.sort_unstable();
        gammas.dedup();
        deltas.sort_unstable();
        deltas.dedup();
        ClosedFormSurface {
            basis: basis.clone(),
            energies: basis.energies(),
            s_elems,
            u_elems,
            gammas,
            deltas,
            max_m,
            max_n,
        }
    }

    pub fn basis(&self) -> &ConfigurationBasis {
        &self.basis
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Returns `(s, u)` at separation `p`.
    pub fn overlap_and_u(&self, p: f64) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
        check_separation(p)?;
        let ng = self.gammas.len();
        let mm = self.max_m as usize + 1;
        let nn = self.max_n as usize + 1;
        let mut sig = vec![0.0; ng * mm];
        for (gi, &g) in self.gammas.iter().enumerate() {
            let gamma = g as f64 / PAIR_UNITS;
            let e = (-gamma * p).exp();
            let mut acc = e / gamma;
            sig[gi * mm] = acc;
            let mut pp = 1.0;
            for m in 1..mm {
                pp *= p;
                acc = (pp * e + m as f64 * acc) / gamma;
                sig[gi * mm + m] = acc;
            }
        }
        let mut tau = vec![0.0; self.deltas.len() * nn];
        for (di, &d) in self.deltas.iter().enumerate() {
            for n in 0..nn {
                tau[di * nn + n] = tau_integral(n as u32, d as f64 / PAIR_UNITS, p);
            }
        }
        let eval = |e: &SeparatedElement| -> f64 {
            e.terms
                .iter()
                .map(|&((pp, m, n, g, d), c)| {
                    let gi = self.gammas.binary_search(&g).expect("gamma indexed");
                    let di = self.deltas.binary_search(&d).expect("delta indexed");
                    c * p.powi(pp as i32) * sig[gi * mm + m as usize] * tau[di * nn + n as usize]
                })
                .sum()
        };
        let nf = self.basis.size();
        let s = DMatrix::from_fn(nf, nf, |i, j| eval(&self.s_elems[i * nf + j]));
        let u = DMatrix::from_fn(nf, nf, |i, j| eval(&self.u_elems[i * nf + j]));
        // s is symmetric by construction; enforce it bitwise.
        let s = (&s + s.transpose()) * 0.5;
        Ok((s, u))
    }
}

impl SurfaceModel for ClosedFormSurface {
    fn size(&self) -> usize {
        self.basis.size()
    }

    fn matrices(&self, p: f64) -> Result<SurfaceMatrices> {
        let (s, u) = self.overlap_and_u(p)?;
        Ok(SurfaceMatrices::from_overlap(p, s, u, &self.energies))
    }
}

/// Numerical-quadrature evaluator of the same matrices, in `r1, r2` variables.
#[derive(Debug, Clone)]
pub struct QuadratureSurface {
    basis: ConfigurationBasis,
    energies: Vec<f64>,
    /// Outer cutoff is `p + tail`.
    pub tail: f64,
    pub rtol: f64,
}

impl QuadratureSurface {
    pub fn new(basis: &ConfigurationBasis) -> Self {
        QuadratureSurface {
            basis: basis.clone(),
            energies: basis.energies(),
            tail: 120.0,
            rtol: 1e-13,
        }
    }

    fn double_integral<F: Fn(f64, f64) -> f64>(&self, p: f64, f: F) -> f64 {
        let inner = |r1: f64| {
            let lo = (r1 - p).abs();
            integrate_adaptive(|r2| f(r1, r2), lo, r1 + p, self.rtol)
        };
        integrate_adaptive(inner, 0.0, p, self.rtol)
            + integrate_adaptive(inner, p, p + self.tail, self.rtol)
    }

    pub fn overlap_element(&self, p: f64, i: usize, j: usize) -> Result<f64> {
        check_separation(p)?;
        let b = &self.basis;
        b.partner(i)?;
        b.partner(j)?;
        Ok(0.5
            * p
            * self.double_integral(p, |r1, r2| {
                r1 * r2 * b.config_eval(i, r1, r2).unwrap() * b.config_eval(j, r1, r2).unwrap()
            }))
    }

    pub fn u_element(&self, p: f64, i: usize, j: usize) -> Result<f64> {
        check_separation(p)?;
        let b = &self.basis;
        b.partner(i)?;
        b.partner(j)?;
        Ok(self.double_integral(p, |r1, r2| {
            // ½ p r1 r2 times (p² ± (r1² − r2²))/(2 p r_k).
            let c1 = 0.25 * r2 * (p * p + r1 * r1 - r2 * r2);
            let c2 = 0.25 * r1 * (p * p - r1 * r1 + r2 * r2);
            b.config_eval(i, r1, r2).unwrap()
                * (c1 * b.config_deriv_r1(j, r1, r2).unwrap()
                    + c2 * b.config_deriv_r2(j, r1, r2).unwrap())
        }))
    }
}

impl SurfaceModel for QuadratureSurface {
    fn size(&self) -> usize {
        self.basis.size()
    }

    fn matrices(&self, p: f64) -> Result<SurfaceMatrices> {
        let nf = self.basis.size();
        let mut s = DMatrix::zeros(nf, nf);
        let mut u = DMatrix::zeros(nf, nf);
        for i in 0..nf {
            for j in 0..nf {
                if j >= i {
                    let v = self.overlap_element(p, i + 1, j + 1)?;
                    s[(i, j)] = v;
                    s[(j, i)] = v;
                }
                u[(i, j)] = self.u_element(p, i + 1, j + 1)?;
            }
        }
        Ok(SurfaceMatrices::from_overlap(p, s, u, &self.energies))
    }
}

/// Rescales every matrix of an inner model by a positive function `g(p)`.
pub struct GaugeScaled<M, G> {
    pub inner: M,
    pub gauge: G,
}

impl<M: SurfaceModel, G: Fn(f64) -> f64 + Sync> SurfaceModel for GaugeScaled<M, G> {
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn matrices(&self, p: f64) -> Result<SurfaceMatrices> {
        Ok(self.inner.matrices(p)?.scaled((self.gauge)(p)))
    }
}

/// `s(p)` from the closed-form path.
pub fn overlap_matrix(p: f64, basis: &ConfigurationBasis) -> Result<DMatrix<f64>> {
    Ok(ClosedFormSurface::new(basis).overlap_and_u(p)?.0)
}

/// `u(p)` from the closed-form path.
pub fn u_matrix(p: f64, basis: &ConfigurationBasis) -> Result<DMatrix<f64>> {
    Ok(ClosedFormSurface::new(basis).overlap_and_u(p)?.1)
}

/// Write `p, s_ij…, u_ij…` rows (row-major element order) with 12 significant digits.
pub fn write_matrices_csv<W: Write, M: SurfaceModel>(
    out: &mut W,
    model: &M,
    separations: &[f64],
) -> Result<()> {
    let nf = model.size();
    let mut header = vec!["p".to_string()];
    for prefix in ["s", "u"] {
        for i in 1..=nf {
            for j in 1..=nf {
                header.push(format!("{prefix}{i}{j}"));
            }
        }
    }
    writeln!(out, "{}", header.join(","))?;
    for &p in separations {
        let m = model.matrices(p)?;
        let mut row = vec![fmt_sig(p)];
        for mat in [&m.s, &m.u] {
            for i in 0..nf {
                for j in 0..nf {
                    row.push(fmt_sig(mat[(i, j)]));
                }
            }
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// Twelve significant digits in scientific notation.
pub fn fmt_sig(v: f64) -> String {
    format!("{v:.11e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_integral_simple_values() {
        assert!((closed_form_integral(0, 1.0, 0.0, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        assert!((closed_form_integral(1, 2.0, 0.0, f64::INFINITY).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(closed_form_integral(3, 1.0, 2.0, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn closed_form_integral_matches_quadrature() {
        let q = integrate_adaptive(|r| r.powi(3) * (-0.75 * r).exp(), 0.5, 4.5, 1e-15);
        let c = closed_form_integral(3, 0.75, 0.5, 4.5).unwrap();
        assert!((c / q - 1.0).abs() < 1e-12, "{c} vs {q}");
        for &(k, a, x0, x1) in &[
            (0u32, 3.0, 0.0, 0.01),
            (7, 0.25, 1.0, 80.0),
            (12, 1.5, 10.0, 10.5),
            (5, 2.0, 30.0, 45.0),
        ] {
            let q = integrate_adaptive(|r| r.powi(k as i32) * (-a * r).exp(), x0, x1, 1e-15);
            let c = closed_form_integral(k, a, x0, x1).unwrap();
            assert!((c / q - 1.0).abs() < 1e-12, "k={k} a={a}: {c} vs {q}");
        }
    }

    #[test]
    fn closed_form_integral_rejects_bad_input() {
        assert!(closed_form_integral(1, 0.0, 0.0, 1.0).is_err());
        assert!(closed_form_integral(1, -1.0, 0.0, 1.0).is_err());
        assert!(closed_form_integral(1, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn tau_integral_matches_quadrature() {
        for &(n, d, p) in &[
            (0u32, 0.0, 1.0),
            (1, 0.0, 3.0),
            (3, 0.375, 40.0),
            (4, -0.75, 25.0),
            (1, 0.5, 1e-3),
            (6, -0.875, 60.0),
        ] {
            let q = integrate_adaptive(|t| t.powi(n as i32) * (-d * t).exp(), -p, p, 1e-15);
            let c = tau_integral(n, d, p);
            if q == 0.0 {
                assert!(c.abs() < 1e-15);
            } else {
                assert!((c / q - 1.0).abs() < 1e-12, "n={n} d={d} p={p}: {c} vs {q}");
            }
        }
    }

    #[test]
    fn separations_must_be_positive() {
        let b = ConfigurationBasis::new(2).unwrap();
        assert!(overlap_matrix(0.0, &b).is_err());
        assert!(u_matrix(-1.0, &b).is_err());
        let q = QuadratureSurface::new(&b);
        assert!(q.matrices(0.0).is_err());
    }

    #[test]
    fn t_and_h_exact_by_construction() {
        let b = ConfigurationBasis::new(4).unwrap();
        let m = ClosedFormSurface::new(&b).matrices(1.3).unwrap();
        let eps = b.energies();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.t[(i, j)], 2.0 * m.s[(i, j)]);
                assert_eq!(m.h[(i, j)], eps[j] * m.s[(i, j)]);
            }
        }
        assert_eq!(m.h[(0, 0)], -m.s[(0, 0)]);
        let ratio = m.h[(0, 1)] / m.h[(1, 0)];
        assert!((ratio - 0.625).abs() < 1e-15);
    }

    #[test]
    fn u_is_not_symmetric() {
        let b = ConfigurationBasis::new(2).unwrap();
        let u = u_matrix(1.0, &b).unwrap();
        assert!((u[(0, 1)] - u[(1, 0)]).abs() > 1e-10);
    }

    #[test]
    fn csv_header_and_rows() {
        let b = ConfigurationBasis::new(2).unwrap();
        let model = ClosedFormSurface::new(&b);
        let mut buf = Vec::new();
        write_matrices_csv(&mut buf, &model, &[0.5, 1.0]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "p,s11,s12,s21,s22,u11,u12,u21,u22");
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1].split(',').count(), 9);
    }
}
