use cwf::basis::ConfigurationBasis;
use cwf::cli::RunConfig;
use cwf::cwf_ode::{roots_from_coefficients, signed_log_det, Equation, PointCoefficients};
use cwf::discrete_well::{
    ci_solve, exact_sector, exact_spectrum, partition_surfaces, PartitionKind, Sector, WellSpec,
};
use cwf::quadrature::integrate_adaptive;
use cwf::surface_integrals::{closed_form_integral, tau_integral, ClosedFormSurface, SurfaceModel};
use nalgebra::DMatrix;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn power_exponential_integral_matches_quadrature(
        k in 0u32..7, a in 0.2f64..3.0, x0 in 0.0f64..5.0, len in 0.01f64..10.0,
    ) {
        let x1 = x0 + len;
        let got = closed_form_integral(k, a, x0, x1).unwrap();
        let want = integrate_adaptive(|r| r.powi(k as i32) * (-a * r).exp(), x0, x1, 1e-13);
        prop_assert!((got - want).abs() <= 1e-11 * want.abs());
    }

    #[test]
    fn tau_series_matches_quadrature(n in 0u32..6, delta in -2.0f64..2.0, p in 0.01f64..30.0) {
        let got = tau_integral(n, delta, p);
        let want = integrate_adaptive(|t| t.powi(n as i32) * (-delta * t).exp(), -p, p, 1e-13);
        let scale = integrate_adaptive(|t| t.abs().powi(n as i32) * (-delta * t).exp(), -p, p, 1e-13);
        prop_assert!((got - want).abs() <= 1e-11 * scale);
    }

    #[test]
    fn asymptotic_roots_solve_the_quadratic_problem(
        n_f in 2usize..=4, log_p in 0.0f64..1.6, e in -1.1f64..-0.5,
    ) {
        let m = ClosedFormSurface::new(&ConfigurationBasis::new(n_f).unwrap())
            .matrices(10f64.powf(log_p))
            .unwrap();
        let c = PointCoefficients::from_matrices(&m).unwrap();
        let rep = Equation::ion(2.0).repulsion();
        let r = roots_from_coefficients(&c, e, rep).unwrap();
        prop_assert_eq!(r.physical.len(), n_f);
        prop_assert!(r.residuals(&c, rep).iter().all(|&x| x < 1e-9));
        let mut labels: Vec<usize> = r.physical.iter().map(|x| x.label).collect();
        labels.sort_unstable();
        prop_assert_eq!(labels, (0..n_f).collect::<Vec<_>>());
    }

    #[test]
    fn signed_log_det_agrees_with_lu(entries in proptest::collection::vec(-10.0f64..10.0, 25)) {
        let m = DMatrix::from_vec(5, 5, entries);
        let d = m.determinant();
        let s = signed_log_det(&m);
        prop_assert!((s.value() - d).abs() <= 1e-9 * d.abs().max(1e-6));
    }

    #[test]
    fn two_particle_well_properties(q in 0.1f64..3.0, lambda in 0.3f64..3.0, points in 3usize..=7) {
        let mut s = WellSpec::new(2, points).unwrap();
        s.q = q;
        s.lambda = lambda * s.step();
        let part = partition_surfaces(&s, PartitionKind::Total).unwrap();
        let covered: usize = part.classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(covered, s.order());
        prop_assert_eq!(part.classes.len(), points);
        let exact = exact_spectrum(&s).values;
        for k in 1..=points {
            let ci = ci_solve(&s, k, Sector::All).unwrap();
            for (a, b) in ci.iter().zip(&exact) {
                prop_assert!(*a >= b - 1e-10);
            }
        }
        let anti = exact_sector(&s, Sector::Antisymmetric).unwrap();
        prop_assert_eq!(anti.len(), points * (points - 1) / 2);
    }

    #[test]
    fn config_numeric_overrides_round_trip(p_max in 10.0f64..80.0, step in 1e-4f64..1e-2, n_f in 1usize..=4) {
        let mut c = RunConfig::default();
        c.apply_override(&format!("p_max={p_max}")).unwrap();
        c.apply_override(&format!("step={step}")).unwrap();
        c.apply_override(&format!("n_f={n_f}")).unwrap();
        prop_assert_eq!(c.solver.p_max, p_max);
        prop_assert_eq!(c.solver.step, step);
        prop_assert_eq!(c.n_f, n_f);
        prop_assert!(c.validate().is_ok());
    }
}
