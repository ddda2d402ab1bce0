//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p ince-core --test acceptance -- --nocapture --test-threads=1`.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use ince_core::figures::{fig1, fig2, fig3, fig4, fig5, fig6, FigureConfig};
use ince_core::ince::{build_matrix, build_matrix_unchecked, orthogonality_matrix, solve_family};
use ince_core::params::{derive_params, Family, LaserPlasmaConfig, PlasmaSpec};
use ince_core::specialfns::{bessel_i_scaled, envelope_fourier};
use ince_core::table::Table;
use ince_core::tridiag::eigenvalues;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, ok: bool, detail: String) {
    println!("{} criterion {id}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id}: {detail}");
}

fn rel(x: f64, target: f64) -> f64 {
    (x / target - 1.0).abs()
}

const TI_SA_EV: f64 = 1.563;

#[test]
fn criterion_01_parameter_pipeline() {
    let t = Instant::now();
    let moderate =
        derive_params(&LaserPlasmaConfig::new(TI_SA_EV, 1e8, PlasmaSpec::PlasmonEnergy(1.0))).unwrap();
    let extreme =
        derive_params(&LaserPlasmaConfig::new(TI_SA_EV, 6e20, PlasmaSpec::PlasmonEnergy(1.0))).unwrap();
    let ms = t.elapsed().as_secs_f64() * 1e3;
    let checks = [
        rel(moderate.mu0, 6.782e-6) <= 5e-3,
        (13.4..=13.9).contains(&moderate.a),
        rel(extreme.mu0, 16.61) <= 1e-2,
        rel(extreme.a, 3.32e7) <= 2e-2,
        ms < 100.0,
    ];
    report(
        1,
        checks.iter().all(|&c| c),
        format!(
            "mu0(1e8)={:.6e} (6.782e-6 ±0.5%) a(1e8)={:.4} ([13.4,13.9]) mu0(6e20)={:.4} (16.61 ±1%) \
             a(6e20)={:.5e} (3.32e7 ±2%, off {:.2}%) in {ms:.2} ms",
            moderate.mu0,
            moderate.a,
            extreme.mu0,
            extreme.a,
            100.0 * rel(extreme.a, 3.32e7)
        ),
    );
}

#[test]
fn criterion_02_plasma_anchor() {
    let d = derive_params(&LaserPlasmaConfig::new(TI_SA_EV, 1e8, PlasmaSpec::PlasmonEnergy(1.0))).unwrap();
    let (ne, lp) = (d.electron_density, d.plasma_wavelength_nm());
    report(
        2,
        rel(ne, 7.242e20) <= 1e-3 && rel(lp, 1240.0) <= 1e-3,
        format!(
            "n_e={ne:.5e} cm^-3 (7.242e20 ±0.1%, off {:.3}%) lambda_p={lp:.3} nm (1240 ±0.1%)",
            100.0 * rel(ne, 7.242e20)
        ),
    );
}

#[test]
fn criterion_03_closed_form_eigenvalues() {
    let mut worst = 0.0f64;
    for a in [0.5f64, 1.0, 14.0] {
        let cases = [
            (Family::EvenSine, 1, vec![4.0]),
            (Family::OddCosine, 0, vec![1.0 + a]),
            (Family::OddSine, 0, vec![1.0 - a]),
            (Family::EvenCosine, 1, vec![2.0 - 2.0 * (1.0 + a * a).sqrt(), 2.0 + 2.0 * (1.0 + a * a).sqrt()]),
        ];
        for (f, n, exact) in cases {
            let got: Vec<f64> = solve_family(f, n, a).unwrap().iter().map(|s| s.eta).collect();
            assert_eq!(got.len(), exact.len());
            for (g, e) in got.iter().zip(&exact) {
                worst = worst.max((g - e).abs() / e.abs().max(f64::MIN_POSITIVE));
            }
        }
    }
    report(3, worst <= 1e-11, format!("max relative error {worst:.2e} (tol 1e-11)"));
}

#[test]
fn criterion_04_ode_residual() {
    let t = Instant::now();
    let xs: Vec<f64> = (0..101).map(|j| -2.0 * PI + 4.0 * PI * j as f64 / 100.0).collect();
    let mut worst = 0.0f64;
    let mut count = 0;
    for f in Family::ALL {
        for n in f.min_degree()..=30 {
            for a in [0.1, 1.0, 14.0] {
                for s in solve_family(f, n, a).unwrap() {
                    let r = xs.iter().map(|&xi| s.ode_residual(xi)).fold(0.0, f64::max);
                    worst = worst.max(r / s.residual_scale());
                    count += 1;
                }
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    report(
        4,
        worst <= 1e-9 && secs < 10.0,
        format!("{count} solutions, max scaled residual {worst:.2e} (tol 1e-9) in {secs:.2} s (< 10 s)"),
    );
}

#[test]
fn criterion_05_orthogonality() {
    let (mut off, mut norm) = (0.0f64, 0.0f64);
    for f in Family::ALL {
        let g = orthogonality_matrix(&solve_family(f, 20, 14.0).unwrap()).unwrap();
        off = off.max(g.max_offdiag_ratio());
        for d in &g.unweighted_diag {
            norm = norm.max(rel(*d, PI));
        }
    }
    report(
        5,
        off <= 1e-10 && norm <= 1e-10,
        format!("max weighted off-diagonal ratio {off:.2e}, max |diag/pi - 1| {norm:.2e} (tol 1e-10)"),
    );
}

#[test]
fn criterion_06_mirror_identity() {
    let mut worst = 0.0f64;
    for n in 0..=30 {
        let lhs = eigenvalues(&build_matrix(Family::OddSine, n, 14.0).unwrap()).unwrap();
        let rhs = eigenvalues(&build_matrix_unchecked(Family::OddCosine, n, -14.0).unwrap()).unwrap();
        worst = worst.max(common::max_rel_diff(&lhs, &rhs));
    }
    report(6, worst <= 1e-10, format!("max eigenvalue deviation {worst:.2e} over n<=30 (tol 1e-10)"));
}

#[test]
fn criterion_07_small_coupling_limit() {
    let a = 1e-8;
    let (mut eta_err, mut vec_err) = (0.0f64, 0.0f64);
    for f in Family::ALL {
        for n in f.min_degree()..=30 {
            for (slot, s) in solve_family(f, n, a).unwrap().iter().enumerate() {
                let m = f.harmonic(slot) as f64;
                eta_err = eta_err.max((s.eta - m * m).abs());
                let len = s.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
                for (j, c) in s.coeffs.iter().enumerate() {
                    let unit = if j == slot { 1.0 } else { 0.0 };
                    vec_err = vec_err.max(((c / len).abs() - unit).abs());
                }
            }
        }
    }
    report(
        7,
        eta_err <= 1e-6 && vec_err <= 1e-6,
        format!("a=1e-8: max |eta - m^2| {eta_err:.2e}, max unit-vector deviation {vec_err:.2e} (tol 1e-6)"),
    );
}

fn strength_sums(t: &Table) -> Vec<f64> {
    let ks = t.column("k").unwrap();
    let rs = t.column("harmonic").unwrap();
    let st = t.column("strength").unwrap();
    let even_cos = t.name.ends_with("even_cosine");
    let mut sums: Vec<(f64, f64)> = Vec::new();
    for i in 0..ks.len() {
        let w = if even_cos && rs[i] == 0.0 { 2.0 } else { 1.0 };
        match sums.last_mut() {
            Some((k, s)) if *k == ks[i] => *s += w * st[i],
            _ => sums.push((ks[i], w * st[i])),
        }
    }
    sums.into_iter().map(|(_, s)| s).collect()
}

#[test]
fn criterion_08_figures() {
    let cfg = FigureConfig::default();
    let mut notes = Vec::new();
    let mut ok = true;

    let env_err = fig1(&cfg)
        .iter()
        .zip(&cfg.envelope_couplings)
        .map(|(t, a)| {
            let min = t.column("envelope_sq").unwrap().into_iter().fold(f64::INFINITY, f64::min);
            rel(min, (-a).exp())
        })
        .fold(0.0, f64::max);
    ok &= env_err <= 1e-12;
    notes.push(format!("fig1 min err {env_err:.1e}"));

    let tabs = fig2(&cfg).unwrap();
    let counts: Vec<usize> = tabs.iter().map(|t| t.rows.len()).collect();
    let distinct = tabs.iter().all(|t| {
        let v = t.column("eta").unwrap();
        v.iter().all(|x| x.is_finite()) && v.windows(2).all(|w| w[1] > w[0])
    });
    ok &= counts == [21, 20, 21, 21] && distinct;
    notes.push(format!("fig2 rows {counts:?} distinct={distinct}"));

    let norm_err = fig3(&cfg)
        .unwrap()
        .iter()
        .chain(fig4(&cfg).unwrap().iter())
        .flat_map(strength_sums)
        .map(|s| (s - 1.0).abs())
        .fold(0.0, f64::max);
    ok &= norm_err <= 1e-12;
    notes.push(format!("fig3/4 normalization err {norm_err:.1e}"));

    let mut res = 0.0f64;
    for t in fig5(&cfg).unwrap().iter().chain(fig6(&cfg).unwrap().iter()) {
        let fam: Family = t.meta.iter().find(|(k, _)| k == "family").unwrap().1.parse().unwrap();
        let sols = solve_family(fam, cfg.n, cfg.a).unwrap();
        let ks = t.column("k").unwrap();
        let r = t.column("residual").unwrap();
        ok &= ks.len() == 4 * 1001;
        for (k, r) in ks.iter().zip(&r) {
            let s = sols.iter().find(|s| s.k as f64 == *k).unwrap();
            res = res.max(r / s.residual_scale());
        }
    }
    ok &= res <= 1e-9;
    notes.push(format!("fig5/6 scaled residual {res:.1e}"));

    report(8, ok, notes.join(", "));
}

#[test]
fn criterion_09_bessel_envelope() {
    let mut recon = 0.0f64;
    let mut ident = 0.0f64;
    for a in [4.0f64, 14.0, 100.0] {
        let order = (a / 4.0).ceil() as usize + 30;
        let s = envelope_fourier(a, order).unwrap();
        for j in 0..64 {
            let xi = -PI + 2.0 * PI * j as f64 / 64.0;
            // error measured against the envelope peak e^{a/4}
            let exact = (-(a / 4.0) * (xi.cos() + 1.0)).exp();
            recon = recon.max((s.eval_scaled(xi) - exact).abs());
        }
        ident = ident.max((bessel_i_scaled(a / 4.0, order).unwrap().generating_sum() - 1.0).abs());
    }
    report(
        9,
        recon <= 1e-10 && ident <= 1e-12,
        format!("reconstruction err/e^(a/4) {recon:.2e} (tol 1e-10), scaled sum identity {ident:.2e} (tol 1e-12)"),
    );
}

#[test]
fn criterion_10_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ce);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = Family::ALL[rng.gen_range(0..4)];
        let n = rng.gen_range(f.min_degree()..=25);
        let a = 20.0 - rng.gen_range(0.0..20.0);
        let m = build_matrix(f, n, a).unwrap();
        worst = worst.max(common::max_rel_diff(&common::sturm_eigenvalues(&m), &eigenvalues(&m).unwrap()));
    }
    report(10, worst <= 1e-11, format!("50 random matrices, max relative deviation {worst:.2e} (tol 1e-11)"));
}
