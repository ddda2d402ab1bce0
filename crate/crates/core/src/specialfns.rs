//! Exponentially scaled modified Bessel functions `I_l(x) e^{−x}` and the
//! Fourier expansion of the envelope `exp[−(a/4) cos ξ]`.

use std::f64::consts::PI;

use crate::error::{InceError, Result};

/// `values[l] = I_l(x) e^{−x}` for `l = 0..=max_order`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledBesselRow {
    pub x: f64,
    pub max_order: usize,
    pub values: Vec<f64>,
}

impl ScaledBesselRow {
    /// `values[0] + 2 Σ values[l]`; equals 1 when the row covers the tail.
    pub fn generating_sum(&self) -> f64 {
        self.values[0] + 2.0 * self.values[1..].iter().sum::<f64>()
    }
}

const RESCALE_AT: f64 = 1e250;

/// One Miller sweep from `start` down to 0, normalized by the generating
/// function `I_0 + 2 Σ I_l = e^x`.
fn miller_sweep(x: f64, max_order: usize, start: usize) -> Vec<f64> {
    let mut out = vec![0.0; max_order + 1];
    let mut above = 0.0; // f_{l+1}
    let mut cur = 1e-300; // f_l
    let mut sum = 0.0;
    for l in (0..=start).rev() {
        if l <= max_order {
            out[l] = cur;
        }
        sum += if l == 0 { cur } else { 2.0 * cur };
        if l == 0 {
            break;
        }
        let below = (2.0 * l as f64 / x) * cur + above;
        above = cur;
        cur = below;
        if cur > RESCALE_AT {
            let s = 1.0 / RESCALE_AT;
            cur *= s;
            above *= s;
            sum *= s;
            out.iter_mut().for_each(|v| *v *= s);
        }
    }
    out.iter_mut().for_each(|v| *v /= sum);
    out
}

/// Scaled Bessel row by Miller's downward recurrence.
///
/// The start order is increased until every value with magnitude above
/// 1e-290 is stable to 1e-13 relative.
pub fn bessel_i_scaled(x: f64, max_order: usize) -> Result<ScaledBesselRow> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(InceError::NegativeArgument(x));
    }
    if x == 0.0 {
        let mut values = vec![0.0; max_order + 1];
        values[0] = 1.0;
        return Ok(ScaledBesselRow { x, max_order, values });
    }
    let mut start = max_order + (10.0 + 2.0 * (max_order as f64 * x).sqrt()).ceil() as usize;
    let mut prev = miller_sweep(x, max_order, start);
    loop {
        start *= 2;
        let next = miller_sweep(x, max_order, start);
        let stable = next.iter().zip(&prev).all(|(a, b)| {
            a.abs() < 1e-290 || ((a - b) / a).abs() <= 1e-13
        });
        prev = next;
        if stable {
            break;
        }
    }
    Ok(ScaledBesselRow { x, max_order, values: prev })
}

/// Cosine series `exp[−(a/4)cos ξ] = c₀ + 2 Σ c_l cos[l(ξ−π)]`, with
/// `c_l = I_l(a/4)` stored as `e^{log_scale} · scaled[l]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeSeries {
    pub a: f64,
    /// Natural-log common factor, `a/4`.
    pub log_scale: f64,
    pub scaled: Vec<f64>,
}

impl EnvelopeSeries {
    pub fn max_order(&self) -> usize {
        self.scaled.len() - 1
    }

    /// Partial sum divided by `e^{a/4}`.
    pub fn eval_scaled(&self, xi: f64) -> f64 {
        let t = xi - PI;
        let tail: f64 =
            self.scaled.iter().enumerate().skip(1).map(|(l, c)| c * (l as f64 * t).cos()).sum();
        self.scaled[0] + 2.0 * tail
    }

    /// Partial sum.
    pub fn eval(&self, xi: f64) -> f64 {
        self.eval_scaled(xi) * self.log_scale.exp()
    }

    /// Unscaled coefficient `I_l(a/4)`; overflows for very large `a`.
    pub fn coefficient(&self, l: usize) -> f64 {
        self.scaled[l] * self.log_scale.exp()
    }
}

/// Envelope series truncated at `max_order`.
pub fn envelope_fourier(a: f64, max_order: usize) -> Result<EnvelopeSeries> {
    let x = a / 4.0;
    let row = bessel_i_scaled(x, max_order)?;
    Ok(EnvelopeSeries { a, log_scale: x, scaled: row.values })
}

/// Envelope series truncated where `I_L(a/4)/I_0(a/4) < 1e-16`.
pub fn envelope_fourier_adaptive(a: f64) -> Result<EnvelopeSeries> {
    let x = a / 4.0;
    let mut guess = (x.ceil() as usize) + 40 + (10.0 * x.sqrt()).ceil() as usize;
    loop {
        let row = bessel_i_scaled(x, guess)?;
        let head = row.values[0];
        if let Some(cut) = row.values.iter().position(|&v| v < 1e-16 * head) {
            let mut scaled = row.values;
            scaled.truncate(cut.max(1));
            return Ok(EnvelopeSeries { a, log_scale: x, scaled });
        }
        guess *= 2;
    }
}
