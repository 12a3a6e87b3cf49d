//! Sturm-sequence bisection: an independent eigenvalue route used to cross-check QL.

use super::model::Configuration;
use super::tridiagonal::TridiagonalSym;
use crate::scalar::Scalar;

/// Number of eigenvalues of `m` strictly below `x`.
///
/// Counts negative pivots of the LDL^T factorization of `m - x I`.
pub fn count_below<T: Scalar>(m: &TridiagonalSym<T>, x: T) -> usize {
    let d = m.diag();
    let e = m.offdiag();
    let tiny = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut q = d[0] - x;
    for i in 0..d.len() {
        if i > 0 {
            q = d[i] - x - e[i - 1] * e[i - 1] / q;
        }
        if q == T::zero() {
            q = -tiny;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// All eigenvalues by bisection, decreasing. Each is bracketed to width `tol`
/// (or the floating-point resolution at its magnitude, whichever is larger).
pub fn eigenvalues_bisection<T: Scalar>(m: &TridiagonalSym<T>, tol: T) -> Configuration<T> {
    let n = m.order();
    let radius = m.norm_bound();
    let lo0 = -radius - T::one();
    let hi0 = radius + T::one();
    let two = T::of(2.0);
    let mut values = Vec::with_capacity(n);
    // The k-th largest eigenvalue is the (n - 1 - k)-th smallest.
    for k in (0..n).rev() {
        let (mut lo, mut hi) = (lo0, hi0);
        for _ in 0..400 {
            let width = hi - lo;
            let resolution = two * T::epsilon() * lo.abs().max(hi.abs());
            if width <= tol.max(resolution) {
                break;
            }
            let mid = (lo + hi) / two;
            if count_below(m, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        values.push((lo + hi) / two);
    }
    Configuration::from_sorted_unchecked(values)
}
