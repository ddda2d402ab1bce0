//! Data behind the six illustration figures: envelope contrast, eigenvalue
//! tables, harmonic strengths and sampled waveforms.

use std::f64::consts::PI;

use crate::error::Result;
use crate::ince::{solve_family, IncePolynomial};
use crate::params::Family;
use crate::table::Table;
use crate::VERSION;

#[derive(Debug, Clone, PartialEq)]
pub struct FigureConfig {
    /// Coupling for figures 2–6.
    pub a: f64,
    /// Degree for figures 2–6.
    pub n: usize,
    /// Couplings shown in figure 1.
    pub envelope_couplings: Vec<f64>,
    /// Grid size for sampled curves.
    pub grid_points: usize,
    /// Eigen indices sampled in figures 3, 5 and 6 (the first entry is
    /// replaced by 1 for the even sine family).
    pub indices: Vec<usize>,
}

impl Default for FigureConfig {
    fn default() -> Self {
        Self {
            a: 14.0,
            n: 20,
            envelope_couplings: vec![4.0, 14.0],
            grid_points: 1001,
            indices: vec![0, 9, 15, 20],
        }
    }
}

/// Uniform grid of `points` values on `[lo, hi]`, endpoints included.
pub fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points < 2 {
        return vec![lo];
    }
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

fn tagged(name: String, a: impl ToString, q: impl ToString, family: impl ToString, n: impl ToString) -> Table {
    Table::new(name, &[])
        .meta("a", a)
        .meta("q", q)
        .meta("family", family)
        .meta("n", n)
        .meta("version", VERSION)
}

fn with_columns(mut t: Table, columns: &[&str]) -> Table {
    t.columns = columns.iter().map(|c| c.to_string()).collect();
    t
}

/// Normalized envelope square `exp[−(a/2)cos ξ] / e^{a/2}` on `[−π, π]`.
pub fn fig1(cfg: &FigureConfig) -> Vec<Table> {
    let xs = grid(-PI, PI, cfg.grid_points);
    cfg.envelope_couplings
        .iter()
        .map(|&a| {
            let mut t = with_columns(
                tagged(format!("fig1_a{a}"), a, "-", "envelope", "-"),
                &["xi", "envelope_sq"],
            );
            for &xi in &xs {
                t.push(vec![xi.into(), (-(a / 2.0) * (xi.cos() + 1.0)).exp().into()]);
            }
            t
        })
        .collect()
}

/// Eigenvalue table for one family.
pub fn eigen_table(family: Family, n: usize, a: f64) -> Result<Table> {
    let sols = solve_family(family, n, a)?;
    let mut t = with_columns(
        tagged(format!("fig2_{family}"), a, family.q(n), family, n),
        &["k", "eta"],
    );
    for s in &sols {
        t.push(vec![s.k.into(), s.eta.into()]);
    }
    Ok(t)
}

/// Eigenvalues of all four families.
pub fn fig2(cfg: &FigureConfig) -> Result<Vec<Table>> {
    Family::ALL.iter().map(|&f| eigen_table(f, cfg.n, cfg.a)).collect()
}

/// Harmonic strengths `coeff²` for the given solutions.
pub fn strength_table(name: String, family: Family, n: usize, a: f64, sols: &[IncePolynomial]) -> Table {
    let mut t = with_columns(
        tagged(name, a, family.q(n), family, n),
        &["k", "r", "harmonic", "strength"],
    );
    for s in sols {
        for (r, st) in s.harmonic_strengths().into_iter().enumerate() {
            let r_label = if family == Family::EvenSine { r + 1 } else { r };
            t.push(vec![s.k.into(), r_label.into(), family.harmonic(r).into(), st.into()]);
        }
    }
    t
}

fn selected_indices(family: Family, cfg: &FigureConfig) -> Vec<usize> {
    let mut ks = cfg.indices.clone();
    if let Some(first) = ks.first_mut() {
        *first = (*first).max(family.first_index());
    }
    ks
}

fn pick(sols: Vec<IncePolynomial>, ks: &[usize]) -> Vec<IncePolynomial> {
    sols.into_iter().filter(|s| ks.contains(&s.k)).collect()
}

/// Harmonic strengths of the even cosine family at the selected indices.
pub fn fig3(cfg: &FigureConfig) -> Result<Vec<Table>> {
    let fam = Family::EvenCosine;
    let sols = pick(solve_family(fam, cfg.n, cfg.a)?, &selected_indices(fam, cfg));
    Ok(vec![strength_table("fig3_even_cosine".into(), fam, cfg.n, cfg.a, &sols)])
}

/// Harmonic strengths of every solution of every family.
pub fn fig4(cfg: &FigureConfig) -> Result<Vec<Table>> {
    Family::ALL
        .iter()
        .map(|&f| {
            let sols = solve_family(f, cfg.n, cfg.a)?;
            Ok(strength_table(format!("fig4_{f}"), f, cfg.n, cfg.a, &sols))
        })
        .collect()
}

/// Waveforms with first and second z-derivatives and the ODE residual,
/// sampled on `[−2π, 2π]`.
pub fn waveform_table(name: String, family: Family, n: usize, a: f64, sols: &[IncePolynomial], points: usize) -> Table {
    let mut t = with_columns(
        tagged(name, a, family.q(n), family, n),
        &["k", "xi", "w", "dw_dz", "d2w_dz2", "residual"],
    );
    let xs = grid(-2.0 * PI, 2.0 * PI, points);
    for s in sols {
        for &xi in &xs {
            let d = s.derivs(xi);
            t.push(vec![
                s.k.into(),
                xi.into(),
                d.w.into(),
                d.dw.into(),
                d.d2w.into(),
                s.ode_residual(xi).into(),
            ]);
        }
    }
    t
}

fn waveform_figure(id: u8, family: Family, cfg: &FigureConfig) -> Result<Vec<Table>> {
    let sols = pick(solve_family(family, cfg.n, cfg.a)?, &selected_indices(family, cfg));
    Ok(vec![waveform_table(format!("fig{id}_{family}"), family, cfg.n, cfg.a, &sols, cfg.grid_points)])
}

/// Even cosine waveforms.
pub fn fig5(cfg: &FigureConfig) -> Result<Vec<Table>> {
    waveform_figure(5, Family::EvenCosine, cfg)
}

/// Even sine waveforms.
pub fn fig6(cfg: &FigureConfig) -> Result<Vec<Table>> {
    waveform_figure(6, Family::EvenSine, cfg)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("unknown figure id {0} (expected 1..=6)")]
pub struct UnknownFigure(pub u8);

/// Tables for figure `id`.
pub fn figure(id: u8, cfg: &FigureConfig) -> std::result::Result<Result<Vec<Table>>, UnknownFigure> {
    Ok(match id {
        1 => Ok(fig1(cfg)),
        2 => fig2(cfg),
        3 => fig3(cfg),
        4 => fig4(cfg),
        5 => fig5(cfg),
        6 => fig6(cfg),
        other => return Err(UnknownFigure(other)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_minimum() {
        let tables = fig1(&FigureConfig::default());
        let t = &tables[1];
        let v = t.column("envelope_sq").unwrap();
        let min = v.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((min / (-14f64).exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_counts() {
        let counts: Vec<usize> =
            fig2(&FigureConfig::default()).unwrap().iter().map(|t| t.rows.len()).collect();
        assert_eq!(counts, vec![21, 20, 21, 21]);
    }

    #[test]
    fn sine_waveform_vanishes_at_origin() {
        let t = &fig6(&FigureConfig::default()).unwrap()[0];
        let k = t.column("k").unwrap();
        let xi = t.column("xi").unwrap();
        let w = t.column("w").unwrap();
        let at0: Vec<f64> = (0..w.len()).filter(|&i| k[i] == 1.0 && xi[i] == 0.0).map(|i| w[i]).collect();
        assert_eq!(at0, vec![0.0]);
    }

    #[test]
    fn unknown_id() {
        assert_eq!(figure(7, &FigureConfig::default()).unwrap_err(), UnknownFigure(7));
    }
}
