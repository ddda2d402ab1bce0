//! Ince polynomials: the finite trigonometric solutions of
//! `w″ + a sin2z w′ + (η − qa cos2z) w = 0` for integer q.
//!
//! Each family reduces to the eigenproblem of a tridiagonal matrix:
//!
//! | family       | q      | series                  | matrix | size |
//! |--------------|--------|-------------------------|--------|------|
//! | `EvenCosine` | 2n     | `Σ A_r cos 2rz`         | L_n    | n+1  |
//! | `EvenSine`   | 2n     | `Σ B_r sin 2rz`, r ≥ 1  | M_n    | n    |
//! | `OddCosine`  | 2n+1   | `Σ A'_r cos (2r+1)z`    | K_n    | n+1  |
//! | `OddSine`    | 2n+1   | `Σ B'_r sin (2r+1)z`    | K̃_n    | n+1  |
//!
//! Solutions are normalized so that `∫_{−π}^{π} w² dz = π` and indexed by
//! ascending eigenvalue. The phase variable is `z = ξ/2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{InceError, Result};
use crate::params::{Family, InceProblem};
use crate::tridiag::{eigen_all, Tridiagonal};

/// Row `i` of the untruncated three-term recurrence: `(sub, diag, sup)`.
///
/// For `i` equal to the last matrix row, `sup` is the coupling to the first
/// coefficient past the truncation point.
fn recurrence_row(family: Family, n: usize, a: f64, i: usize) -> (f64, f64, f64) {
    let (nf, x) = (n as f64, i as f64);
    match family {
        Family::EvenCosine => {
            let sub = match i {
                0 => 0.0,
                1 => 2.0 * nf * a,
                _ => (nf - x + 1.0) * a,
            };
            (sub, 4.0 * x * x, (nf + 1.0 + x) * a)
        }
        Family::EvenSine => {
            // slot i carries sin 2rz with r = i + 1
            let r = x + 1.0;
            let sub = if i == 0 { 0.0 } else { (nf - r + 1.0) * a };
            (sub, 4.0 * r * r, (nf + 1.0 + r) * a)
        }
        Family::OddCosine | Family::OddSine => {
            let sub = if i == 0 { 0.0 } else { (nf + 1.0 - x) * a };
            let diag = match (i, family) {
                (0, Family::OddCosine) => 1.0 + (nf + 1.0) * a,
                (0, _) => 1.0 - (nf + 1.0) * a,
                _ => (2.0 * x + 1.0).powi(2),
            };
            (sub, diag, (nf + 2.0 + x) * a)
        }
    }
}

/// Builds the family's matrix without validating `a`. Negative `a` is
/// accepted so that `K_n(−a)` can be formed for the mirror identity.
#[doc(hidden)]
pub fn build_matrix_unchecked(family: Family, n: usize, a: f64) -> Result<Tridiagonal> {
    if n < family.min_degree() {
        return Err(InceError::DegreeTooSmall { family: family.name(), n, min: family.min_degree() });
    }
    let size = family.size(n);
    let rows: Vec<_> = (0..size).map(|i| recurrence_row(family, n, a, i)).collect();
    let diag = rows.iter().map(|r| r.1).collect();
    let sup = rows[..size - 1].iter().map(|r| r.2).collect();
    let sub = rows[1..].iter().map(|r| r.0).collect();
    Tridiagonal::new(diag, sup, sub)
}

/// The tridiagonal matrix whose eigenpairs give the family's polynomials of
/// degree `n` at coupling `a ≥ 0`.
pub fn build_matrix(family: Family, n: usize, a: f64) -> Result<Tridiagonal> {
    InceProblem::new(family, n, a)?;
    build_matrix_unchecked(family, n, a)
}

/// One Ince polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncePolynomial {
    pub family: Family,
    pub n: usize,
    /// Eigen index in ascending-η order (from 1 for `EvenSine`).
    pub k: usize,
    pub a: f64,
    pub eta: f64,
    /// `A_r`, `B_r`, `A'_r` or `B'_r`; `coeffs[i]` multiplies the harmonic
    /// [`Family::harmonic`]`(i)` of z.
    pub coeffs: Vec<f64>,
}

/// Value and first two z-derivatives of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivs {
    pub w: f64,
    pub dw: f64,
    pub d2w: f64,
}

/// Quadratic form whose value is `∫_{−π}^{π} w² dz / π`.
pub fn norm_form(family: Family, coeffs: &[f64]) -> f64 {
    let sq: f64 = coeffs.iter().map(|c| c * c).sum();
    match family {
        Family::EvenCosine => sq + coeffs.first().map_or(0.0, |c| c * c),
        _ => sq,
    }
}

/// All polynomials of degree `n` for `family`, ascending in η.
pub fn solve_family(family: Family, n: usize, a: f64) -> Result<Vec<IncePolynomial>> {
    let m = build_matrix(family, n, a)?;
    let pairs = eigen_all(&m)?;
    Ok(pairs
        .into_iter()
        .enumerate()
        .map(|(j, p)| {
            let mut coeffs = p.vector;
            let s = norm_form(family, &coeffs).sqrt();
            coeffs.iter_mut().for_each(|c| *c /= s);
            IncePolynomial { family, n, k: j + family.first_index(), a, eta: p.value, coeffs }
        })
        .collect())
}

impl IncePolynomial {
    pub fn q(&self) -> usize {
        self.family.q(self.n)
    }

    pub fn problem(&self) -> InceProblem {
        InceProblem { a: self.a, q: self.q(), family: self.family }
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `w` at phase `ξ` (z = ξ/2).
    pub fn evaluate(&self, xi: f64) -> f64 {
        self.derivs(xi).w
    }

    /// `(w, dw/dz, d²w/dz²)` at phase `ξ`, summed term by term.
    pub fn derivs(&self, xi: f64) -> Derivs {
        let z = 0.5 * xi;
        let mut out = Derivs { w: 0.0, dw: 0.0, d2w: 0.0 };
        for (i, &c) in self.coeffs.iter().enumerate() {
            let h = self.family.harmonic(i) as f64;
            let (s, co) = (h * z).sin_cos();
            if self.family.is_cosine() {
                out.w += c * co;
                out.dw -= c * h * s;
                out.d2w -= c * h * h * co;
            } else {
                out.w += c * s;
                out.dw += c * h * co;
                out.d2w -= c * h * h * s;
            }
        }
        out
    }

    /// The solution for coupling `−a`, i.e. `w(z + π/2)`.
    pub fn evaluate_reflected(&self, xi: f64) -> f64 {
        self.evaluate(2.0 * crate::params::reflect_coupling(0.5 * xi))
    }

    /// `|w″ + a sin2z w′ + (η − qa cos2z) w|` at phase `ξ`.
    pub fn ode_residual(&self, xi: f64) -> f64 {
        self.ode_residual_with(xi, self.a, self.eta)
    }

    /// Residual of Ince's equation for arbitrary `(a, η)`; used for
    /// perturbation checks.
    pub fn ode_residual_with(&self, xi: f64, a: f64, eta: f64) -> f64 {
        let z = 0.5 * xi;
        let d = self.derivs(xi);
        let q = self.q() as f64;
        let (s2, c2) = (2.0 * z).sin_cos();
        (d.d2w + a * s2 * d.dw + (eta - q * a * c2) * d.w).abs()
    }

    /// Scale against which the ODE residual is judged.
    pub fn residual_scale(&self) -> f64 {
        (1.0 + self.eta.abs() + self.q() as f64 * self.a) * self.max_coeff()
    }

    /// Squared coefficients (harmonic strengths).
    pub fn harmonic_strengths(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c * c).collect()
    }

    /// First coefficient past the truncation point, obtained by running the
    /// untruncated recurrence one more step. Vanishes for a true solution.
    pub fn next_coefficient(&self) -> f64 {
        let last = self.coeffs.len() - 1;
        let (sub, diag, sup) = recurrence_row(self.family, self.n, self.a, last);
        if sup == 0.0 {
            return 0.0;
        }
        let prev = if last > 0 { self.coeffs[last - 1] } else { 0.0 };
        (self.eta * self.coeffs[last] - diag * self.coeffs[last] - sub * prev) / sup
    }
}

/// Weighted Gram matrix and unweighted norms of a set of solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    /// `∫_{−π}^{π} e^{−(a/2)cos2z} w_l w_m dz`.
    pub weighted: Vec<Vec<f64>>,
    /// `∫_{−π}^{π} w_l² dz`.
    pub unweighted_diag: Vec<f64>,
}

impl GramMatrix {
    /// Largest `|G_lm| / √(G_ll G_mm)` over `l ≠ m`.
    pub fn max_offdiag_ratio(&self) -> f64 {
        let g = &self.weighted;
        let mut worst = 0.0f64;
        for l in 0..g.len() {
            for m in 0..g.len() {
                if l != m {
                    worst = worst.max(g[l][m].abs() / (g[l][l] * g[m][m]).sqrt());
                }
            }
        }
        worst
    }
}

/// Number of quadrature nodes over one period for degree `n`.
pub fn quadrature_points(n: usize) -> usize {
    256.max(16 * (n + 1))
}

/// Gram matrix by the periodic trapezoid rule. All solutions must share
/// family, degree and coupling.
pub fn orthogonality_matrix(solutions: &[IncePolynomial]) -> Result<GramMatrix> {
    let Some(first) = solutions.first() else {
        return Ok(GramMatrix { weighted: Vec::new(), unweighted_diag: Vec::new() });
    };
    if solutions
        .iter()
        .any(|s| s.family != first.family || s.n != first.n || s.a != first.a)
    {
        return Err(InceError::MixedSolutions);
    }
    let npts = quadrature_points(first.n);
    let h = 2.0 * PI / npts as f64;
    let count = solutions.len();
    let mut weighted = vec![vec![0.0; count]; count];
    let mut unweighted_diag = vec![0.0; count];
    let mut values = vec![0.0; count];
    for j in 0..npts {
        let z = -PI + h * j as f64;
        let weight = (-(first.a / 2.0) * (2.0 * z).cos()).exp();
        for (v, s) in values.iter_mut().zip(solutions) {
            *v = s.evaluate(2.0 * z);
        }
        for l in 0..count {
            unweighted_diag[l] += h * values[l] * values[l];
            for m in l..count {
                weighted[l][m] += h * weight * values[l] * values[m];
            }
        }
    }
    for l in 1..count {
        let (upper, lower) = weighted.split_at_mut(l);
        for (m, row) in upper.iter().enumerate() {
            lower[0][m] = row[l];
        }
    }
    Ok(GramMatrix { weighted, unweighted_diag })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &Tridiagonal) -> Vec<Vec<f64>> {
        let n = m.size();
        (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect()
    }

    #[test]
    fn small_matrices() {
        let a = 0.7;
        assert_eq!(
            dense(&build_matrix(Family::EvenCosine, 1, a).unwrap()),
            vec![vec![0.0, 2.0 * a], vec![2.0 * a, 4.0]]
        );
        assert_eq!(dense(&build_matrix(Family::OddCosine, 0, a).unwrap()), vec![vec![1.0 + a]]);
        assert_eq!(dense(&build_matrix(Family::OddSine, 0, a).unwrap()), vec![vec![1.0 - a]]);
        assert_eq!(
            dense(&build_matrix(Family::EvenSine, 2, a).unwrap()),
            vec![vec![4.0, 4.0 * a], vec![a, 16.0]]
        );
    }

    #[test]
    fn larger_bands() {
        let (n, a) = (4, 1.0);
        let l = build_matrix(Family::EvenCosine, n, a).unwrap();
        assert_eq!(l.diag(), &[0.0, 4.0, 16.0, 36.0, 64.0]);
        assert_eq!(l.sup(), &[5.0, 6.0, 7.0, 8.0]);
        assert_eq!(l.sub(), &[8.0, 3.0, 2.0, 1.0]);
        let k = build_matrix(Family::OddCosine, n, a).unwrap();
        assert_eq!(k.diag(), &[6.0, 9.0, 25.0, 49.0, 81.0]);
        assert_eq!(k.sup(), &[6.0, 7.0, 8.0, 9.0]);
        assert_eq!(k.sub(), &[4.0, 3.0, 2.0, 1.0]);
        let kt = build_matrix(Family::OddSine, n, a).unwrap();
        assert_eq!(kt.diag()[0], -4.0);
        let m = build_matrix(Family::EvenSine, n, a).unwrap();
        assert_eq!(m.diag(), &[4.0, 16.0, 36.0, 64.0]);
        assert_eq!(m.sup(), &[6.0, 7.0, 8.0]);
        assert_eq!(m.sub(), &[3.0, 2.0, 1.0]);
    }

    #[test]
    fn degree_checks() {
        assert!(build_matrix(Family::EvenSine, 0, 1.0).is_err());
        assert!(build_matrix(Family::EvenCosine, 3, -1.0).is_err());
        assert!(build_matrix_unchecked(Family::OddCosine, 3, -1.0).is_ok());
    }

    #[test]
    fn exact_sine_solution() {
        for a in [0.0, 0.3, 14.0] {
            let sols = solve_family(Family::EvenSine, 1, a).unwrap();
            assert_eq!(sols.len(), 1);
            assert_eq!(sols[0].eta, 4.0);
            assert_eq!(sols[0].coeffs, vec![1.0]);
            assert_eq!(sols[0].k, 1);
            assert!((sols[0].evaluate(PI / 2.0) - 1.0).abs() < 1e-15);
            for xi in [-2.0, 0.4, 5.0] {
                assert!(sols[0].ode_residual(xi) < 1e-12);
            }
        }
    }

    #[test]
    fn exact_odd_solutions() {
        let c = solve_family(Family::OddCosine, 0, 3.0).unwrap();
        assert_eq!(c[0].eta, 4.0);
        assert_eq!(c[0].coeffs, vec![1.0]);
        assert_eq!(c[0].evaluate(0.0), 1.0);
        let s = solve_family(Family::OddSine, 0, 14.0).unwrap();
        assert_eq!(s[0].eta, 1.0 - 14.0);
        assert!(s[0].ode_residual(1.3) < 1e-12 * s[0].residual_scale());
    }

    #[test]
    fn zero_coupling_limit() {
        let sols = solve_family(Family::EvenCosine, 1, 0.0).unwrap();
        assert_eq!(sols[0].eta, 0.0);
        assert_eq!(sols[1].eta, 4.0);
        assert!((sols[0].coeffs[0] - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(sols[0].coeffs[1], 0.0);
        assert_eq!(sols[1].coeffs, vec![0.0, 1.0]);
    }

    #[test]
    fn even_cosine_closed_form_eigenvector() {
        // [[0,2],[2,4]]: top eigenvalue 2+2√2, eigenvector ∝ (1, 1+√2)
        let sols = solve_family(Family::EvenCosine, 1, 1.0).unwrap();
        let top = &sols[1];
        let r = 1.0 + 2f64.sqrt();
        let a0 = 1.0 / (2.0 + r * r).sqrt();
        let a1 = r * a0;
        assert!((top.coeffs[0] - a0).abs() < 1e-14);
        assert!((top.coeffs[1] - a1).abs() < 1e-14);
        assert!((top.evaluate(0.0) - (a0 + a1)).abs() < 1e-14);
    }

    #[test]
    fn perturbed_eta_is_detected() {
        let sols = solve_family(Family::OddCosine, 4, 1.0).unwrap();
        for s in &sols {
            let xi = 0.0;
            let w = s.evaluate(xi).abs();
            assert!(w > 1e-3);
            assert!(s.ode_residual_with(xi, s.a, s.eta + 0.1) >= 0.09 * w);
        }
    }

    #[test]
    fn gram_rejects_mixed_input() {
        let mut sols = solve_family(Family::EvenCosine, 2, 1.0).unwrap();
        sols.extend(solve_family(Family::OddCosine, 2, 1.0).unwrap());
        assert_eq!(orthogonality_matrix(&sols), Err(InceError::MixedSolutions));
    }

    #[test]
    fn gram_is_pi_identity_at_zero_coupling() {
        for fam in Family::ALL {
            let sols = solve_family(fam, 3, 0.0).unwrap();
            let g = orthogonality_matrix(&sols).unwrap();
            for (l, row) in g.weighted.iter().enumerate() {
                for (m, &x) in row.iter().enumerate() {
                    let expect = if l == m { PI } else { 0.0 };
                    assert!((x - expect).abs() < 1e-12, "{fam} {l} {m} {x}");
                }
            }
        }
    }

    #[test]
    fn reflected_solution_solves_negative_coupling() {
        let sols = solve_family(Family::EvenCosine, 5, 2.0).unwrap();
        for s in &sols {
            // residual of w(z + π/2) with a → −a, by finite assembly
            let mirrored = IncePolynomial {
                coeffs: s
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(r, c)| if r % 2 == 0 { *c } else { -*c })
                    .collect(),
                ..s.clone()
            };
            for xi in [0.1, 1.0, 2.5] {
                assert!((mirrored.evaluate(xi) - s.evaluate_reflected(xi)).abs() < 1e-12);
                let r = mirrored.ode_residual_with(xi, -s.a, s.eta);
                assert!(r < 1e-9 * s.residual_scale());
            }
        }
    }
}
