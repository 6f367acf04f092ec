use cwf::basis::ConfigurationBasis;
use cwf::quadrature::PanelRule;
use cwf::surface_integrals::{ClosedFormSurface, QuadratureSurface, SurfaceModel};
use nalgebra::DMatrix;

fn rel_err(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let scale = a[(i, i)].abs().max(a[(j, j)].abs()).max(a[(i, j)].abs());
            worst = worst.max((a[(i, j)] - b[(i, j)]).abs() / scale);
        }
    }
    worst
}

#[test]
fn closed_form_agrees_with_quadrature() {
    let basis = ConfigurationBasis::new(4).unwrap();
    let closed = ClosedFormSurface::new(&basis);
    let quad = QuadratureSurface::new(&basis);
    for &p in &[0.01, 0.1, 1.0, 5.0, 20.0, 40.0] {
        let a = closed.matrices(p).unwrap();
        let b = quad.matrices(p).unwrap();
        let es = rel_err(&a.s, &b.s);
        let eu = rel_err(&a.u, &b.u);
        eprintln!("p={p} s_err={es:.2e} u_err={eu:.2e}");
        assert!(es < 1e-10 && eu < 1e-10, "p={p}: {es} {eu}");
    }
}

#[test]
fn overlap_integrates_to_identity() {
    let basis = ConfigurationBasis::new(4).unwrap();
    let closed = ClosedFormSurface::new(&basis);
    let rule = PanelRule::separation_default();
    let mut total = DMatrix::zeros(4, 4);
    for (&p, &w) in rule.nodes.iter().zip(&rule.weights) {
        total += closed.matrices(p).unwrap().s * w;
    }
    let err = (total - DMatrix::identity(4, 4)).abs().max();
    eprintln!("identity err {err:.2e}");
    assert!(err < 1e-10);
}

#[test]
fn hamiltonian_block_integrates_to_configuration_energies() {
    let basis = ConfigurationBasis::new(4).unwrap();
    let closed = ClosedFormSurface::new(&basis);
    let rule = PanelRule::separation_default();
    let mut total = DMatrix::zeros(4, 4);
    for (&p, &w) in rule.nodes.iter().zip(&rule.weights) {
        total += closed.matrices(p).unwrap().h * w;
    }
    let expected = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(basis.energies()));
    assert!((total - expected).abs().max() < 1e-8);
}

#[test]
fn drift_matrix_vanishes_like_p_cubed() {
    let closed = ClosedFormSurface::new(&ConfigurationBasis::new(4).unwrap());
    let (a, b) = (1e-3, 1e-2);
    let ua = closed.matrices(a).unwrap().u;
    let ub = closed.matrices(b).unwrap().u;
    for i in 0..4 {
        for j in 0..4 {
            let slope = (ub[(i, j)].abs() / ua[(i, j)].abs()).ln() / (b / a).ln();
            assert!((slope - 3.0).abs() < 0.1, "u[{i}{j}] slope {slope}");
        }
    }
}

#[test]
fn drift_to_overlap_ratio_tends_to_minus_two() {
    let closed = ClosedFormSurface::new(&ConfigurationBasis::new(1).unwrap());
    let m = closed.matrices(40.0).unwrap();
    let ratio = m.u[(0, 0)] / m.s[(0, 0)];
    assert!((ratio + 2.0).abs() < 5e-2, "ratio {ratio}");
}

// s12/s11 grows with p because s11 has the fastest decay of all elements;
// the off-diagonal element does fall off relative to the larger diagonal.
#[test]
fn off_diagonal_overlap_decays_relative_to_diagonal() {
    let closed = ClosedFormSurface::new(&ConfigurationBasis::new(2).unwrap());
    let mut prev = f64::INFINITY;
    for k in 0..=15 {
        let p = 25.0 + k as f64;
        let s = closed.matrices(p).unwrap().s;
        let r = s[(0, 1)].abs() / s[(0, 0)].max(s[(1, 1)]);
        assert!(r < 1e-3 && r < prev, "p={p}: {r}");
        prev = r;
    }
}

// ds/dp = 2s/p + (u + uᵀ)/2, checked by central differences.
#[test]
fn overlap_derivative_identity() {
    let closed = ClosedFormSurface::new(&ConfigurationBasis::new(3).unwrap());
    for &p in &[0.05, 0.5, 2.0, 7.0, 15.0] {
        let h = 1e-4 * p;
        let ds = (closed.matrices(p + h).unwrap().s - closed.matrices(p - h).unwrap().s) / (2.0 * h);
        let m = closed.matrices(p).unwrap();
        let rhs = &m.s * (2.0 / p) + (&m.u + m.u.transpose()) * 0.5;
        let scale = m.s.abs().max() / p;
        assert!((ds - rhs).abs().max() < 1e-6 * scale, "p={p}");
    }
}

mod properties {
    use cwf::basis::ConfigurationBasis;
    use cwf::cwf_ode::PointCoefficients;
    use cwf::surface_integrals::{ClosedFormSurface, SurfaceModel};
    use nalgebra::SymmetricEigen;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn overlap_symmetric_and_semidefinite(log_p in -2.0f64..1.6, n in 1usize..=4) {
            let p = 10f64.powf(log_p);
            let basis = ConfigurationBasis::new(n).unwrap();
            let m = ClosedFormSurface::new(&basis).matrices(p).unwrap();
            let scale = m.s.abs().max();
            prop_assert!((&m.s - m.s.transpose()).abs().max() <= 1e-14 * scale);
            let eig = SymmetricEigen::new(m.s.clone());
            prop_assert!(eig.eigenvalues.iter().all(|&v| v >= -1e-12 * scale.max(1e-300)));
        }

        #[test]
        fn kinetic_and_energy_blocks_exact(log_p in -2.0f64..1.6) {
            let basis = ConfigurationBasis::new(4).unwrap();
            let m = ClosedFormSurface::new(&basis).matrices(10f64.powf(log_p)).unwrap();
            let eps = basis.energies();
            let scale = m.s.abs().max();
            prop_assert!((&m.t - &m.s * 2.0).abs().max() <= 1e-14 * scale);
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert!((m.h[(i, j)] - eps[j] * m.s[(i, j)]).abs() <= 1e-14 * scale);
                }
            }
        }

        // A common positive factor g(p) leaves the row-scaled equation untouched.
        // Past p ~ 10 the comparison is limited by the conditioning of s
        // (the same spread appears for g = 1 + 1e-9), so the probe stops there.
        #[test]
        fn row_scaled_coefficients_are_gauge_free(log_p in -1.0f64..1.0, g in 1e-3f64..1e3) {
            let basis = ConfigurationBasis::new(3).unwrap();
            let m = ClosedFormSurface::new(&basis).matrices(10f64.powf(log_p)).unwrap();
            let a = PointCoefficients::from_matrices(&m).unwrap();
            let b = PointCoefficients::from_matrices(&m.scaled(g)).unwrap();
            for (x, y) in [(&a.k1, &b.k1), (&a.gh, &b.gh), (&a.gs, &b.gs)] {
                prop_assert!((x - y).abs().max() <= 1e-11 * x.abs().max().max(1.0));
            }
        }
    }
}
