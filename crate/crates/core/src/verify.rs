//! Invariant suites run by `ince-wave verify`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::figures::grid;
use crate::ince::{build_matrix, build_matrix_unchecked, orthogonality_matrix, solve_family};
use crate::params::Family;
use crate::specialfns::{bessel_i_scaled, envelope_fourier};
use crate::tridiag::eigenvalues;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub families: Vec<Family>,
    pub degrees: Vec<usize>,
    pub couplings: Vec<f64>,
    /// Degree and coupling of the orthogonality suite.
    pub orthogonality_degree: usize,
    pub orthogonality_coupling: f64,
    pub mirror_coupling: f64,
    pub limit_coupling: f64,
    pub bessel_couplings: Vec<f64>,
    /// Test hook: added to η inside the ODE-residual suite.
    pub eta_perturbation: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            families: Family::ALL.to_vec(),
            degrees: (0..=30).collect(),
            couplings: vec![0.1, 1.0, 14.0],
            orthogonality_degree: 20,
            orthogonality_coupling: 14.0,
            mirror_coupling: 14.0,
            limit_coupling: 1e-8,
            bessel_couplings: vec![1.0, 4.0, 14.0, 100.0],
            eta_perturbation: 0.0,
        }
    }
}

impl VerifyConfig {
    fn degrees_for(&self, family: Family) -> impl Iterator<Item = usize> + '_ {
        self.degrees.iter().copied().filter(move |&n| n >= family.min_degree())
    }
}

/// Outcome of one suite. `worst` is the largest normalized error seen and
/// `tolerance` the bound it is compared against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
    /// Up to ten failing cases.
    pub failures: Vec<String>,
}

struct Tally {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    worst: f64,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, cases: 0, worst: 0.0, failures: Vec::new(), failed: 0 }
    }

    fn record(&mut self, err: f64, what: impl FnOnce() -> String) {
        self.cases += 1;
        if err.is_nan() || err > self.worst {
            self.worst = if err.is_nan() { f64::INFINITY } else { err };
        }
        if !(err <= self.tolerance) {
            self.failed += 1;
            if self.failures.len() < 10 {
                self.failures.push(format!("{}: {err:e}", what()));
            }
        }
    }

    fn error(&mut self, what: String) {
        self.cases += 1;
        self.failed += 1;
        self.worst = f64::INFINITY;
        if self.failures.len() < 10 {
            self.failures.push(what);
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name.to_string(),
            passed: self.failed == 0,
            cases: self.cases,
            worst: self.worst,
            tolerance: self.tolerance,
            failures: self.failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub version: String,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

/// ODE residual on a 101-point grid over `[−2π, 2π]`, relative to
/// `(1+|η|+qa)·max|coeff|`.
pub fn check_ode_residual(cfg: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("ode_residual", 1e-9);
    let xs = grid(-2.0 * PI, 2.0 * PI, 101);
    for &family in &cfg.families {
        for n in cfg.degrees_for(family) {
            for &a in &cfg.couplings {
                let sols = match solve_family(family, n, a) {
                    Ok(s) => s,
                    Err(e) => {
                        t.error(format!("{family} n={n} a={a}: {e}"));
                        continue;
                    }
                };
                for s in &sols {
                    let eta = s.eta + cfg.eta_perturbation;
                    let worst = xs
                        .iter()
                        .map(|&xi| s.ode_residual_with(xi, a, eta))
                        .fold(0.0, f64::max);
                    t.record(worst / s.residual_scale(), || format!("{family} n={n} a={a} k={}", s.k));
                }
            }
        }
    }
    t.finish()
}

/// Weighted Gram off-diagonals and unweighted norms (`= π`).
pub fn check_orthogonality(cfg: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("orthogonality", 1e-10);
    let (n, a) = (cfg.orthogonality_degree, cfg.orthogonality_coupling);
    for &family in &cfg.families {
        if n < family.min_degree() {
            continue;
        }
        let gram = match solve_family(family, n, a).and_then(|s| orthogonality_matrix(&s)) {
            Ok(g) => g,
            Err(e) => {
                t.error(format!("{family} n={n} a={a}: {e}"));
                continue;
            }
        };
        t.record(gram.max_offdiag_ratio(), || format!("{family} n={n} a={a} off-diagonal"));
        for (k, d) in gram.unweighted_diag.iter().enumerate() {
            t.record((d / PI - 1.0).abs(), || format!("{family} n={n} a={a} slot {k} norm"));
        }
    }
    t.finish()
}

/// Spectrum of `K̃_n(a)` against that of `K_n(−a)`, relative to
/// `max(1, |η|)`.
pub fn check_mirror(cfg: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("mirror_identity", 1e-10);
    if !cfg.families.iter().any(|f| !f.is_even()) {
        return t.finish();
    }
    let a = cfg.mirror_coupling;
    for &n in &cfg.degrees {
        let pair = build_matrix(Family::OddSine, n, a)
            .and_then(|m| eigenvalues(&m))
            .and_then(|l| Ok((l, eigenvalues(&build_matrix_unchecked(Family::OddCosine, n, -a)?)?)));
        match pair {
            Ok((lhs, rhs)) => {
                let err = lhs
                    .iter()
                    .zip(&rhs)
                    .map(|(x, y)| (x - y).abs() / x.abs().max(1.0))
                    .fold(0.0, f64::max);
                t.record(err, || format!("n={n} a={a}"));
            }
            Err(e) => t.error(format!("n={n} a={a}: {e}")),
        }
    }
    t.finish()
}

/// Small-coupling limit: η → m² and coefficient vectors → unit vectors.
pub fn check_small_coupling(cfg: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("small_coupling_limit", 1e-6);
    let a = cfg.limit_coupling;
    for &family in &cfg.families {
        for n in cfg.degrees_for(family) {
            let sols = match solve_family(family, n, a) {
                Ok(s) => s,
                Err(e) => {
                    t.error(format!("{family} n={n} a={a}: {e}"));
                    continue;
                }
            };
            for (slot, s) in sols.iter().enumerate() {
                let m = family.harmonic(slot) as f64;
                let euclid = s.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
                let vec_err = s
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| ((c / euclid).abs() - if j == slot { 1.0 } else { 0.0 }).abs())
                    .fold(0.0, f64::max);
                t.record((s.eta - m * m).abs().max(vec_err), || format!("{family} n={n} k={}", s.k));
            }
        }
    }
    t.finish()
}

/// Next recurrence coefficient past the truncation point, relative to
/// `max|coeff|`.
pub fn check_truncation(cfg: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("truncation", 1e-10);
    for &family in &cfg.families {
        for n in cfg.degrees_for(family) {
            for &a in &cfg.couplings {
                match solve_family(family, n, a) {
                    Ok(sols) => {
                        for s in &sols {
                            t.record(s.next_coefficient().abs() / s.max_coeff(), || {
                                format!("{family} n={n} a={a} k={}", s.k)
                            });
                        }
                    }
                    Err(e) => t.error(format!("{family} n={n} a={a}: {e}")),
                }
            }
        }
    }
    t.finish()
}

/// Envelope series reconstruction (relative to `e^{a/4}`) and the scaled
/// generating-function identity.
pub fn check_bessel(cfg: &VerifyConfig) -> CheckResult {
    let mut t = Tally::new("bessel_reconstruction", 1e-10);
    for &a in &cfg.bessel_couplings {
        let order = (a / 4.0).ceil() as usize + 30;
        let series = match envelope_fourier(a, order) {
            Ok(s) => s,
            Err(e) => {
                t.error(format!("a={a}: {e}"));
                continue;
            }
        };
        let err = (0..64)
            .map(|j| {
                let xi = -PI + 2.0 * PI * j as f64 / 64.0;
                let exact = (-(a / 4.0) * (xi.cos() + 1.0)).exp();
                (series.eval_scaled(xi) - exact).abs()
            })
            .fold(0.0, f64::max);
        t.record(err, || format!("a={a} reconstruction"));
        match bessel_i_scaled(a / 4.0, order) {
            // the identity is checked at a tighter bound than the suite's
            Ok(row) => t.record((row.generating_sum() - 1.0).abs() * 100.0, || {
                format!("a={a} generating sum (x100)")
            }),
            Err(e) => t.error(format!("a={a}: {e}")),
        }
    }
    t.finish()
}

/// Runs every suite.
pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let checks = vec![
        check_ode_residual(cfg),
        check_orthogonality(cfg),
        check_mirror(cfg),
        check_small_coupling(cfg),
        check_truncation(cfg),
        check_bessel(cfg),
    ];
    Ok(VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        version: crate::VERSION.to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig { degrees: (0..=6).collect(), orthogonality_degree: 6, ..Default::default() }
    }

    #[test]
    fn quick_run_passes() {
        let r = run(&quick()).unwrap();
        assert!(r.passed, "{:?}", r.failed_checks());
    }

    #[test]
    fn perturbation_names_residual_check() {
        let r = run(&VerifyConfig { eta_perturbation: 0.1, ..quick() }).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failed_checks(), vec!["ode_residual"]);
    }

    #[test]
    fn single_even_sine() {
        let cfg = VerifyConfig {
            families: vec![Family::EvenSine],
            degrees: vec![1],
            orthogonality_degree: 1,
            ..Default::default()
        };
        let r = run(&cfg).unwrap();
        assert!(r.passed, "{:?}", r.failed_checks());
        assert_eq!(r.checks[2].cases, 0);
    }
}
