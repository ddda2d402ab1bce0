//! Real tridiagonal matrices with non-negative off-diagonal products.
//!
//! Such a matrix is diagonally similar to a symmetric tridiagonal matrix
//! with off-diagonal `√(α_{i+1} γ_i)`, so its spectrum is real. Eigenvalues
//! are found by Sturm-sequence bisection on the symmetric form, eigenvectors
//! by inverse iteration, then mapped back through the similarity.
//!
//! Rows with a zero product split the matrix into independent blocks.

use crate::error::{InceError, Result};

/// General real tridiagonal matrix.
///
/// `sup[i]` is the entry at `(i, i+1)` and `sub[i]` the entry at `(i+1, i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    diag: Vec<f64>,
    sup: Vec<f64>,
    sub: Vec<f64>,
}

/// One eigenvalue with its unit eigenvector (first significant entry positive).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

/// Determinant `det(M − ηI)` as `mantissa · 2^exponent`, plus the number of
/// eigenvalues strictly below η.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharPoly {
    pub mantissa: f64,
    pub exponent: i32,
    pub below: usize,
}

impl CharPoly {
    /// The determinant as a plain float (may overflow to ±∞).
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            return 0.0;
        }
        let mut v = self.mantissa;
        let mut e = self.exponent;
        while e > 1000 {
            v *= 2f64.powi(1000);
            e -= 1000;
        }
        while e < -1000 {
            v *= 2f64.powi(-1000);
            e += 1000;
        }
        v * 2f64.powi(e)
    }

    /// Natural log of `|det|`.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.exponent as f64 * std::f64::consts::LN_2
    }
}

const RESIDUAL_TOL: f64 = 1e-10;
const SIGN_TOL: f64 = 1e-10;
const MAX_INVERSE_ITERS: usize = 8;

impl Tridiagonal {
    pub fn new(diag: Vec<f64>, sup: Vec<f64>, sub: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(InceError::EmptyMatrix);
        }
        if sup.len() != n - 1 || sub.len() != n - 1 {
            return Err(InceError::BandLength { size: n });
        }
        Ok(Self { diag, sup, sub })
    }

    /// Diagonal matrix.
    pub fn diagonal(diag: Vec<f64>) -> Result<Self> {
        let m = diag.len().saturating_sub(1);
        Self::new(diag, vec![0.0; m], vec![0.0; m])
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn sup(&self) -> &[f64] {
        &self.sup
    }

    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if j == i + 1 {
            self.sup[i]
        } else if i == j + 1 {
            self.sub[j]
        } else {
            0.0
        }
    }

    /// Products `α_{i+1} γ_i` for `i = 0..N−1`.
    pub fn products(&self) -> Vec<f64> {
        self.sub.iter().zip(&self.sup).map(|(a, g)| a * g).collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.size();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        let n = self.size();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.sub[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.sup[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// Max-norm residual `‖M v − η v‖∞`.
    pub fn residual(&self, eta: f64, v: &[f64]) -> f64 {
        self.matvec(v)
            .iter()
            .zip(v)
            .map(|(mv, x)| (mv - eta * x).abs())
            .fold(0.0, f64::max)
    }

    fn check_products(&self) -> Result<()> {
        for (i, p) in self.products().into_iter().enumerate() {
            if !(p >= 0.0) {
                return Err(InceError::NegativeProduct { row: i + 1, product: p });
            }
        }
        Ok(())
    }

    /// Diagonal and off-diagonal of the similar symmetric matrix.
    ///
    /// The off-diagonal carries the sign of `α_{i+1}` so the similarity
    /// transform uses a positive diagonal scaling.
    pub fn symmetrized(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check_products()?;
        let off = self
            .sub
            .iter()
            .zip(&self.sup)
            .map(|(&a, &g)| a.signum() * (a * g).sqrt())
            .collect();
        Ok((self.diag.clone(), off))
    }

    /// Gershgorin interval of the symmetrized matrix.
    pub fn gershgorin_bounds(&self) -> Result<(f64, f64)> {
        let (d, c) = self.symmetrized()?;
        Ok(sym_gershgorin(&d, &c))
    }
}

fn sym_gershgorin(d: &[f64], c: &[f64]) -> (f64, f64) {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += c[i - 1].abs();
        }
        if i + 1 < n {
            r += c[i].abs();
        }
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    (lo, hi)
}

/// Smallest pivot magnitude admitted in the Sturm recurrence.
fn pivot_floor(d: &[f64], c2: &[f64]) -> f64 {
    let scale = c2.iter().fold(0.0f64, |m, &x| m.max(x)).max(1.0);
    let dmax = d.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1.0);
    f64::MIN_POSITIVE * scale * dmax * 1e4
}

/// Number of negative pivots of the LDLᵀ factorization of `T − ηI`, where
/// `c2[i]` is the squared off-diagonal.
fn sturm_count(d: &[f64], c2: &[f64], eta: f64, floor: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - eta;
    for i in 0..d.len() {
        if i > 0 {
            q = d[i] - eta - c2[i - 1] / q;
        }
        if q.abs() < floor {
            q = if q < 0.0 { -floor } else { floor };
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Evaluates `det(M − ηI)` with the three-term recurrence and counts the
/// eigenvalues strictly below η.
///
/// The count requires non-negative off-diagonal products; with a negative
/// product it reports the number of negative LDLᵀ pivots of the formally
/// symmetrized matrix, which has no spectral meaning.
pub fn char_poly(m: &Tridiagonal, eta: f64) -> CharPoly {
    let n = m.size();
    let prods = m.products();
    let mut exponent: i32 = 0;
    let mut prev = 1.0;
    let mut cur = m.diag[0] - eta;
    for k in 1..n {
        let next = (m.diag[k] - eta) * cur - prods[k - 1] * prev;
        prev = cur;
        cur = next;
        let big = prev.abs().max(cur.abs());
        if big > 1e100 || (big > 0.0 && big < 1e-100) {
            let e = big.log2().floor() as i32;
            let s = 2f64.powi(-e);
            prev *= s;
            cur *= s;
            exponent += e;
        }
    }
    let (mantissa, exponent) = if cur == 0.0 {
        (0.0, 0)
    } else {
        let e = cur.abs().log2().floor() as i32;
        (cur * 2f64.powi(-e), exponent + e)
    };
    CharPoly { mantissa, exponent, below: count_below_unchecked(m, &prods, eta) }
}

fn count_below_unchecked(m: &Tridiagonal, prods: &[f64], eta: f64) -> usize {
    let floor = pivot_floor(&m.diag, prods);
    sturm_count(&m.diag, prods, eta, floor)
}

/// Number of eigenvalues strictly below `eta`.
pub fn eigen_count_below(m: &Tridiagonal, eta: f64) -> Result<usize> {
    m.check_products()?;
    Ok(count_below_unchecked(m, &m.products(), eta))
}

/// Bisects for the `j`-th (0-based, ascending) eigenvalue of a symmetric
/// tridiagonal given by its diagonal and squared off-diagonal.
fn bisect_eigenvalue(d: &[f64], c2: &[f64], j: usize, lo: f64, hi: f64, floor: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(d, c2, mid, floor) > j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All eigenvalues of a symmetric tridiagonal block, ascending.
fn sym_eigenvalues(d: &[f64], c: &[f64]) -> Vec<f64> {
    let n = d.len();
    if n == 1 {
        return vec![d[0]];
    }
    let c2: Vec<f64> = c.iter().map(|x| x * x).collect();
    let (glo, ghi) = sym_gershgorin(d, c);
    let pad = f64::EPSILON * 4.0 * (glo.abs().max(ghi.abs()).max(1.0));
    let (lo, hi) = (glo - pad, ghi + pad);
    let floor = pivot_floor(d, &c2);
    (0..n).map(|j| bisect_eigenvalue(d, &c2, j, lo, hi, floor)).collect()
}

/// LU factorization with partial pivoting of a general tridiagonal matrix
/// shifted by `−η`. Zero pivots are replaced by a tiny multiple of the norm.
struct ShiftedLu {
    // U has diagonal u0 and two superdiagonals u1, u2.
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    l: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(diag: &[f64], sup: &[f64], sub: &[f64], eta: f64, norm: f64) -> Self {
        let n = diag.len();
        let tiny = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
        let mut d: Vec<f64> = diag.iter().map(|x| x - eta).collect();
        let mut du: Vec<f64> = sup.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut dl: Vec<f64> = sub.to_vec();
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                swapped[i] = true;
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -f;
                }
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self { u0: d, u1: du, u2: du2, l: dl, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.l[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.u2[i] * b[i + 2];
            }
            let mut x = s / self.u0[i];
            if !x.is_finite() {
                x = s.signum() * f64::MAX / 4.0;
            }
            b[i] = x;
        }
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let big = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if big == 0.0 || !big.is_finite() {
        return big;
    }
    for x in v.iter_mut() {
        *x /= big;
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
    norm
}

fn sign_normalize(v: &mut [f64]) {
    let big = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > SIGN_TOL * big).copied() {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn seed(n: usize) -> Vec<f64> {
    (0..n).map(|i| 1.0 + ((i * 7919) % 17) as f64 / 17.0).collect()
}

/// Inverse iteration for the eigenvalue `eta` of the tridiagonal given by
/// bands; `prior` holds vectors to orthogonalize against.
fn inverse_iteration(
    diag: &[f64],
    sup: &[f64],
    sub: &[f64],
    eta: f64,
    start: Option<&[f64]>,
    prior: &[&[f64]],
) -> Vec<f64> {
    let n = diag.len();
    let norm = diag
        .iter()
        .zip(sup.iter().chain(std::iter::once(&0.0)))
        .zip(std::iter::once(&0.0).chain(sub.iter()))
        .map(|((d, u), l)| d.abs() + u.abs() + l.abs())
        .fold(0.0, f64::max);
    let lu = ShiftedLu::new(diag, sup, sub, eta, norm);
    let mut x = start.map(<[f64]>::to_vec).unwrap_or_else(|| seed(n));
    normalize(&mut x);
    let tol = 4.0 * f64::EPSILON * (norm + eta.abs());
    for _ in 0..MAX_INVERSE_ITERS {
        lu.solve(&mut x);
        for p in prior {
            let dot: f64 = x.iter().zip(*p).map(|(a, b)| a * b).sum();
            x.iter_mut().zip(*p).for_each(|(a, b)| *a -= dot * b);
        }
        normalize(&mut x);
        let r = band_residual(diag, sup, sub, eta, &x);
        if r <= tol {
            break;
        }
    }
    x
}

fn band_residual(diag: &[f64], sup: &[f64], sub: &[f64], eta: f64, x: &[f64]) -> f64 {
    let n = diag.len();
    (0..n)
        .map(|i| {
            let mut s = (diag[i] - eta) * x[i];
            if i > 0 {
                s += sub[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                s += sup[i] * x[i + 1];
            }
            s.abs()
        })
        .fold(0.0, f64::max)
}

/// Eigenpairs of one unreduced block `start..end` of `m`.
fn block_eigenpairs(m: &Tridiagonal, start: usize, end: usize) -> Vec<(f64, Vec<f64>)> {
    let len = end - start;
    let d = &m.diag[start..end];
    if len == 1 {
        return vec![(d[0], vec![1.0])];
    }
    let alpha = &m.sub[start..end - 1];
    let gamma = &m.sup[start..end - 1];
    let c: Vec<f64> = alpha.iter().zip(gamma).map(|(&a, &g)| a.signum() * (a * g).sqrt()).collect();
    // ln of the diagonal similarity, M = D T D⁻¹.
    let mut log_scale = vec![0.0; len];
    for i in 1..len {
        log_scale[i] = log_scale[i - 1] + 0.5 * (alpha[i - 1].abs().ln() - gamma[i - 1].abs().ln());
    }
    let values = sym_eigenvalues(d, &c);
    let norm = sym_gershgorin(d, &c).0.abs().max(sym_gershgorin(d, &c).1.abs());
    let cluster = 1e-3 * norm.max(f64::MIN_POSITIVE);
    let mut sym_vectors: Vec<Vec<f64>> = Vec::with_capacity(len);
    for (j, &eta) in values.iter().enumerate() {
        let prior: Vec<&[f64]> = (0..j)
            .filter(|&i| (values[i] - eta).abs() < cluster)
            .map(|i| sym_vectors[i].as_slice())
            .collect();
        let u = inverse_iteration(d, &c, &c, eta, None, &prior);
        sym_vectors.push(u);
    }
    values
        .into_iter()
        .zip(sym_vectors)
        .map(|(eta, u)| {
            let logs: Vec<f64> =
                u.iter().zip(&log_scale).map(|(x, s)| x.abs().ln() + s).collect();
            let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let v = u.iter().zip(&logs).map(|(x, l)| x.signum() * (l - top).exp()).collect();
            (eta, v)
        })
        .collect()
}

/// All eigenpairs in ascending order of eigenvalue.
///
/// Fails if any product `α_{i+1} γ_i` is negative.
pub fn eigen_all(m: &Tridiagonal) -> Result<Vec<EigenPair>> {
    m.check_products()?;
    let n = m.size();
    let prods = m.products();
    let norm = m.norm_inf();
    let mut blocks = Vec::new();
    let mut start = 0;
    for (i, &p) in prods.iter().enumerate() {
        if p == 0.0 {
            blocks.push((start, i + 1));
            start = i + 1;
        }
    }
    blocks.push((start, n));
    // Blocks are only independent when both couplings vanish at each split.
    let clean_split = prods
        .iter()
        .enumerate()
        .all(|(i, &p)| p != 0.0 || (m.sub[i] == 0.0 && m.sup[i] == 0.0));

    let mut pairs = Vec::with_capacity(n);
    for &(s, e) in &blocks {
        for (eta, local) in block_eigenpairs(m, s, e) {
            let mut v = vec![0.0; n];
            v[s..e].copy_from_slice(&local);
            if !clean_split {
                v = inverse_iteration(&m.diag, &m.sup, &m.sub, eta, Some(&v), &[]);
            }
            pairs.push((eta, v));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

    pairs
        .into_iter()
        .map(|(eta, mut v)| {
            normalize(&mut v);
            // Unscaling amplifies the symmetric residual where the similarity
            // is large, so polish against the original bands.
            let polished = inverse_iteration(&m.diag, &m.sup, &m.sub, eta, Some(&v), &[]);
            if m.residual(eta, &polished) < m.residual(eta, &v) {
                v = polished;
            }
            if m.residual(eta, &v) > RESIDUAL_TOL * (norm + eta.abs()) {
                return Err(InceError::NoConvergence(eta));
            }
            sign_normalize(&mut v);
            Ok(EigenPair { value: eta, vector: v })
        })
        .collect()
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(m: &Tridiagonal) -> Result<Vec<f64>> {
    let (d, c) = m.symmetrized()?;
    let n = d.len();
    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    for i in 0..n {
        if i + 1 == n || c[i] == 0.0 {
            out.extend(sym_eigenvalues(&d[start..=i], &c[start..i]));
            start = i + 1;
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}
