mod common;

use std::f64::consts::PI;

use ince_core::ince::{build_matrix, norm_form, solve_family};
use ince_core::params::{
    density_from_plasmon_energy, derive_params, plasmon_energy_from_density, Family,
    LaserPlasmaConfig, PlasmaSpec,
};
use ince_core::physics::{
    energy_momentum, envelope, eta_from_momenta, momentum_spectrum, wavefunction, wh_params,
    FourVector, FrameVectors, MassShell, SpacetimePoint, WaveOptions, WhittakerHillParams,
};
use ince_core::table::format_float;
use ince_core::tridiag::{eigen_all, eigenvalues, Tridiagonal};
use ince_core::DerivedParams;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

/// (family, n, a) with a > 0.
fn ince_case(max_n: usize) -> impl Strategy<Value = (Family, usize, f64)> {
    (family(), 0..=max_n, 1e-3f64..20.0)
        .prop_map(|(f, n, a)| (f, n.max(f.min_degree()), a))
}

fn residual_bound(m: &Tridiagonal, eta: f64) -> f64 {
    1e-10 * (m.norm_inf() + eta.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_distinct((f, n, a) in ince_case(40)) {
        let vals = eigenvalues(&build_matrix(f, n, a).unwrap()).unwrap();
        let range = (vals[vals.len() - 1] - vals[0]).max(1.0);
        for w in vals.windows(2) {
            prop_assert!(w[1] - w[0] > 1e-9 * range, "{f} n={n} a={a}: {w:?}");
        }
    }

    #[test]
    fn eigenpairs_residual_bounded((f, n, a) in ince_case(40)) {
        let m = build_matrix(f, n, a).unwrap();
        let (lo, hi) = m.gershgorin_bounds().unwrap();
        let (olo, ohi) = common::row_bounds(&m);
        for p in eigen_all(&m).unwrap() {
            prop_assert!(m.residual(p.value, &p.vector) <= residual_bound(&m, p.value));
            prop_assert!(p.value >= lo.max(olo) - 1e-9 * ohi.abs() && p.value <= hi.min(ohi) + 1e-9 * ohi.abs());
        }
    }

    #[test]
    fn oracle_equivalence((f, n, a) in ince_case(25)) {
        let m = build_matrix(f, n, a).unwrap();
        let got = eigenvalues(&m).unwrap();
        prop_assert!(common::max_rel_diff(&got, &common::oracle_eigenvalues(&m)) <= 1e-11);
    }

    #[test]
    fn similarity_invariance((f, n, a) in ince_case(30)) {
        let m = build_matrix(f, n, a).unwrap();
        let (d, off) = m.symmetrized().unwrap();
        let s = Tridiagonal::new(d, off.clone(), off).unwrap();
        let lhs = eigenvalues(&m).unwrap();
        prop_assert!(common::max_rel_diff(&lhs, &eigenvalues(&s).unwrap()) <= 1e-11);
        for p in eigen_all(&s).unwrap() {
            prop_assert!(s.residual(p.value, &p.vector) <= residual_bound(&s, p.value));
        }
    }

    #[test]
    fn solutions_normalized((f, n, a) in ince_case(30)) {
        for s in solve_family(f, n, a).unwrap() {
            prop_assert!((norm_form(f, &s.coeffs) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn ode_residual_small((f, n, a) in ince_case(30), xi in -2.0 * PI..2.0 * PI) {
        for s in solve_family(f, n, a).unwrap() {
            prop_assert!(s.ode_residual(xi) <= 1e-9 * s.residual_scale());
        }
    }

    #[test]
    fn perturbed_eta_detected((f, n, a) in ince_case(10), xi in -2.0 * PI..2.0 * PI) {
        for s in solve_family(f, n, a).unwrap() {
            let w = s.evaluate(xi);
            prop_assert!(s.ode_residual_with(xi, a, s.eta + 0.1) >= 0.09 * w.abs());
        }
    }

    #[test]
    fn mirror_identity(n in 0usize..=30, a in 0.0f64..20.0) {
        let lhs = eigenvalues(&build_matrix(Family::OddSine, n, a).unwrap()).unwrap();
        let rhs = eigenvalues(&ince_core::ince::build_matrix_unchecked(Family::OddCosine, n, -a).unwrap()).unwrap();
        prop_assert!(common::max_rel_diff(&lhs, &rhs) <= 1e-10);
    }

    #[test]
    fn plasma_round_trip(e in 1e-3f64..1e3) {
        let back = plasmon_energy_from_density(density_from_plasmon_energy(e));
        prop_assert!((back / e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn params_from_either_plasma_spec(e in 0.2f64..1.5, s in 0.0f64..1e20, wp in 0.01f64..0.19) {
        let by_energy = derive_params(&LaserPlasmaConfig::new(e, s, PlasmaSpec::PlasmonEnergy(wp))).unwrap();
        let ne = density_from_plasmon_energy(wp);
        let by_density = derive_params(&LaserPlasmaConfig::new(e, s, PlasmaSpec::ElectronDensity(ne))).unwrap();
        for (x, y) in [
            (by_energy.a, by_density.a),
            (by_energy.kp, by_density.kp),
            (by_energy.n_m, by_density.n_m),
            (by_energy.mu0, by_density.mu0),
        ] {
            prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1e-300));
        }
        prop_assert!(by_energy.kappa_star >= by_energy.kappa);
        let k = by_energy.kp.powi(2) + (by_energy.n_m * by_energy.k0).powi(2);
        prop_assert!((k / by_energy.k0.powi(2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coupling_scales_with_field(e in 0.5f64..3.0, s in 1e6f64..1e18) {
        let plasma = PlasmaSpec::PlasmonEnergy(0.1);
        let a1 = derive_params(&LaserPlasmaConfig::new(e, s, plasma)).unwrap().a;
        let a4 = derive_params(&LaserPlasmaConfig::new(e, 4.0 * s, plasma)).unwrap().a;
        prop_assert!(a4 > a1);
        prop_assert!((a4 / a1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn float_format_round_trips(v in any::<f64>().prop_filter("finite", |v| v.is_finite())) {
        prop_assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn family_name_round_trips(f in family()) {
        prop_assert_eq!(f.name().parse::<Family>().unwrap(), f);
        prop_assert_eq!(f.name().replace('_', "-").parse::<Family>().unwrap(), f);
    }

    #[test]
    fn spectrum_reproduces_eta(
        (f, n, a) in ince_case(20),
        p_z in -3.0f64..3.0,
        kappa in 0.0f64..2.0,
        dressed in any::<bool>(),
    ) {
        let d = DerivedParams::from_scales(2.0, 3f64.sqrt() / 2.0, a, kappa).unwrap();
        let shell = if dressed { MassShell::Dressed } else { MassShell::Free };
        for sol in solve_family(f, n, a).unwrap() {
            let st = momentum_spectrum(sol.eta, &sol.problem(), &d, p_z, shell);
            prop_assert_eq!(st.evanescent, st.p_hat.real().is_none());
            let p_hat_sq = st.p_hat.magnitude().powi(2) * if st.evanescent { -1.0 } else { 1.0 };
            let eta = 4.0 * (p_hat_sq + st.p_x.powi(2) + p_z * p_z + kappa * kappa + d.eps_a0.powi(2))
                / d.kp.powi(2);
            prop_assert!((eta - sol.eta).abs() <= 1e-10 * sol.eta.abs().max(1.0));
            let wh = WhittakerHillParams::from_ince(a, st.q, sol.eta);
            prop_assert!((wh.eta() - sol.eta).abs() <= 1e-12 * sol.eta.abs().max(1.0));
        }
    }

    #[test]
    fn momentum_identities(
        p_xi in -5.0f64..5.0,
        p_hat in -5.0f64..5.0,
        p_x in -5.0f64..5.0,
        p_z in -5.0f64..5.0,
        a in 0.0f64..20.0,
        n_m in 0.05f64..0.99,
    ) {
        let d = DerivedParams::from_scales(1.3, n_m, a, 0.7).unwrap();
        let (p0, p_y) = energy_momentum(d.k0, d.kp, d.n_m, p_xi, p_hat);
        let lhs = p0 * p0 - p_y * p_y;
        let rhs = (p_xi / d.kp).powi(2) - p_hat * p_hat;
        let scale = p0 * p0 + p_y * p_y + 1.0;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
        let p = FourVector::new(p0, p_x, p_y, p_z);
        let frame = FrameVectors::from_params(&d);
        prop_assert!((frame.k.dot(&p) - p_xi).abs() <= 1e-10 * scale);
        let wh = wh_params(&d, &p).unwrap();
        let eta = eta_from_momenta(p_hat, p_x, p_z, &d);
        prop_assert!((wh.eta() - eta).abs() <= 1e-10 * eta.abs().max(1.0));
        prop_assert!((wh.a() - a).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn wavefunction_modulus_factorizes((f, n, a) in ince_case(12), ct in -3.0f64..3.0, x in -3.0f64..3.0) {
        let d = DerivedParams::from_scales(2.0, 3f64.sqrt() / 2.0, a, 0.0).unwrap();
        let opts = WaveOptions { allow_evanescent: true, ..Default::default() };
        for sol in solve_family(f, n, a).unwrap() {
            let st = momentum_spectrum(sol.eta, &sol.problem(), &d, 0.5, MassShell::Free);
            // on x̂ = 0 the longitudinal factor has unit modulus either way
            let pt = SpacetimePoint { ct, x, y: d.n_m * ct, x3: 1.0 };
            let phi = wavefunction(&sol, &st, &pt, opts).unwrap();
            let xi = pt.phase(d.k0, d.n_m);
            let expect = envelope(a, xi) * sol.evaluate(xi).abs();
            prop_assert!((phi.norm() - expect).abs() <= 1e-12 * expect.max(1e-300) + 1e-300);
        }
    }
}
