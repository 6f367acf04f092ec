//! Adaptive Gauss–Kronrod (7/15) and composite Gauss–Legendre rules.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss–Kronrod panel; returns (Kronrod estimate, |Kronrod − Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Globally adaptive integration of `f` over `[a, b]` to relative tolerance `rtol`.
///
/// Panels are bisected, worst first, until the summed error estimate falls
/// below `rtol·|I|` or the panel budget is exhausted.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rtol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut panels: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(64);
    let (v, e) = gk15(&f, a, b);
    panels.push((a, b, v, e));
    let mut total = v;
    let mut err = e;
    let mut iterations = 0;
    while err > rtol * total.abs() && err > 1e-300 && iterations < 2000 {
        iterations += 1;
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("non-empty");
        let (lo, hi, v0, e0) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        total += v1 + v2 - v0;
        err += e1 + e2 - e0;
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
        if iterations % 64 == 0 {
            total = panels.iter().map(|p| p.2).sum();
            err = panels.iter().map(|p| p.3).sum();
        }
    }
    panels.iter().map(|p| p.2).sum()
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre rule: equal panels of `width` on `[a, b]`.
#[derive(Debug, Clone)]
pub struct PanelRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl PanelRule {
    pub fn new(a: f64, b: f64, panels: usize, order: usize) -> Self {
        let (x, w) = gauss_legendre(order);
        let width = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for k in 0..panels {
            let lo = a + k as f64 * width;
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(lo + 0.5 * width * (xi + 1.0));
                weights.push(0.5 * width * wi);
            }
        }
        PanelRule { nodes, weights }
    }

    /// Default mesh for integrals over the separation `p ∈ (0, 200]`.
    pub fn separation_default() -> Self {
        PanelRule::new(0.0, 200.0, 100, 20)
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adaptive_polynomial_and_exponential() {
        let v = integrate_adaptive(|x| x.powi(5) - 3.0 * x, 0.0, 2.0, 1e-14);
        assert!((v - (64.0 / 6.0 - 6.0)).abs() < 1e-13);
        let e = integrate_adaptive(|x| (-x).exp(), 0.0, 60.0, 1e-14);
        assert!((e - (1.0 - (-60f64).exp())).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_kink() {
        let v = integrate_adaptive(|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-13);
        assert!((v - (0.045 + 0.245)).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_exact_for_high_degree() {
        let (x, w) = gauss_legendre(20);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(38)).sum();
        assert!((s - 2.0 / 39.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn panel_rule_gamma_integral() {
        let rule = PanelRule::separation_default();
        let v = rule.integrate(|p| p.powi(8) * (-0.5 * p).exp());
        let exact = 40320.0 * 2f64.powi(9);
        assert!((v / exact - 1.0).abs() < 1e-12);
    }
}
