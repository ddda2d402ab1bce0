//! Test-only eigenvalue oracles, written independently of the solver.
#![allow(dead_code)]

use ince_core::tridiag::{char_poly, Tridiagonal};

/// Number of eigenvalues below `x` from sign changes of the leading
/// principal minors `det(T_k − xI)`, rescaled pairwise to avoid overflow.
pub fn minor_sign_count(m: &Tridiagonal, x: f64) -> usize {
    let (d, up, lo) = (m.diag(), m.sup(), m.sub());
    let mut prev = 1.0f64;
    let mut cur = d[0] - x;
    let mut changes = usize::from(cur < 0.0);
    for k in 1..d.len() {
        let mut next = (d[k] - x) * cur - up[k - 1] * lo[k - 1] * prev;
        if next == 0.0 {
            // nudge an exact zero to the sign that treats x as just above it
            next = -f64::MIN_POSITIVE * cur.signum();
        }
        if (next < 0.0) != (cur < 0.0) {
            changes += 1;
        }
        let s = next.abs().max(cur.abs());
        prev = cur / s;
        cur = next / s;
    }
    changes
}

/// Row-sum bounds on the spectrum.
pub fn row_bounds(m: &Tridiagonal) -> (f64, f64) {
    let n = m.size();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r: f64 = (0..n).filter(|&j| j != i).map(|j| m.get(i, j).abs()).sum();
        lo = lo.min(m.get(i, i) - r);
        hi = hi.max(m.get(i, i) + r);
    }
    (lo, hi)
}

/// The `j`-th smallest eigenvalue by bisection on a counting function.
pub fn bisect(m: &Tridiagonal, j: usize, count: impl Fn(f64) -> usize) -> f64 {
    let (mut lo, mut hi) = row_bounds(m);
    let pad = 1e-12 * (hi - lo).abs().max(1.0);
    lo -= pad;
    hi += pad;
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count(mid) > j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All eigenvalues by bisection on the independent minor-sign count.
pub fn oracle_eigenvalues(m: &Tridiagonal) -> Vec<f64> {
    (0..m.size()).map(|j| bisect(m, j, |x| minor_sign_count(m, x))).collect()
}

/// All eigenvalues by bisection on the library's own Sturm count.
pub fn sturm_eigenvalues(m: &Tridiagonal) -> Vec<f64> {
    (0..m.size()).map(|j| bisect(m, j, |x| char_poly(m, x).below)).collect()
}

/// Largest `|x − y| / max(|x|, |y|, 1)`.
pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1.0)).fold(0.0, f64::max)
}
