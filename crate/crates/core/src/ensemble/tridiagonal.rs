use serde::{Deserialize, Serialize};

use super::model::{sort_decreasing, Configuration};
use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// Implicit QL sweeps allowed per eigenvalue before giving up.
pub const QL_MAX_ITERATIONS: usize = 60;

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalSym<T = f64> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Scalar> TridiagonalSym<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return domain("tridiagonal matrix must have order at least 1");
        }
        if offdiag.len() + 1 != diag.len() {
            return domain(format!(
                "off-diagonal has length {}, expected {}",
                offdiag.len(),
                diag.len() - 1
            ));
        }
        if diag.iter().chain(&offdiag).any(|v| !v.is_finite()) {
            return domain("tridiagonal matrix has non-finite entries");
        }
        Ok(Self { diag, offdiag })
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn trace(&self) -> T {
        self.diag.iter().copied().sum()
    }

    /// Maximum absolute row sum, an upper bound on the spectral radius.
    pub fn norm_bound(&self) -> T {
        let n = self.order();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s = s + self.offdiag[i - 1].abs();
                }
                if i + 1 < n {
                    s = s + self.offdiag[i].abs();
                }
                s
            })
            .fold(T::zero(), T::max)
    }
}

/// All eigenvalues of `m`, sorted decreasingly, by the root-free implicit QL
/// iteration (Pal–Walker–Kahan, Wilkinson-type shift), which works on the
/// squared off-diagonal and needs no square root per rotation.
///
/// An off-diagonal entry is deflated once `e_k^2 <= tol^2 |d_k d_{k+1}|`;
/// `tol` is floored at machine epsilon. Each returned eigenvalue is then within a
/// small multiple of `tol * ||m||` of an exact one.
pub fn eigenvalues_tridiagonal<T: Scalar>(m: &TridiagonalSym<T>, tol: T) -> Result<Configuration<T>> {
    if !(tol > T::zero()) {
        return domain("eigensolver tolerance must be positive");
    }
    let tol = tol.max(T::epsilon());
    let tol2 = tol * tol;
    let n = m.order();
    let mut d = m.diag.clone();
    let mut e: Vec<T> = m.offdiag.iter().map(|&v| v * v).collect();
    e.push(T::zero());
    let two = T::of(2.0);
    let floor = {
        let f = T::epsilon() * T::epsilon() * m.norm_bound();
        f * f
    };

    let mut l = 0;
    let mut iterations = 0;
    while l < n {
        let mut split = n - 1;
        for k in l..n - 1 {
            if e[k] <= tol2 * (d[k] * d[k + 1]).abs() || e[k] <= floor {
                split = k;
                break;
            }
        }
        if split == l {
            l += 1;
            iterations = 0;
            continue;
        }
        if split == l + 1 {
            let (r1, r2) = eig2(d[l], e[l].sqrt(), d[l + 1]);
            d[l] = r1;
            d[l + 1] = r2;
            e[l] = T::zero();
            l += 2;
            iterations = 0;
            continue;
        }
        if iterations == QL_MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                index: l,
                iterations,
            });
        }
        iterations += 1;

        let rte = e[l].sqrt();
        let mut sigma = (d[l + 1] - d[l]) / (two * rte);
        let r = (sigma * sigma + T::one()).sqrt();
        sigma = d[l] - rte / (sigma + r.copysign(sigma));
        let (mut c, mut s) = (T::one(), T::zero());
        let mut gamma = d[split] - sigma;
        let mut p = gamma * gamma;
        for i in (l..split).rev() {
            let bb = e[i];
            let r = p + bb;
            if i + 1 != split {
                e[i + 1] = s * r;
            }
            let old_c = c;
            c = p / r;
            s = bb / r;
            let old_gamma = gamma;
            let alpha = d[i];
            gamma = c * (alpha - sigma) - s * old_gamma;
            d[i + 1] = old_gamma + (alpha - gamma);
            p = if c != T::zero() { gamma * gamma / c } else { old_c * bb };
        }
        e[l] = s * p;
        d[l] = sigma + gamma;
    }
    sort_decreasing(&mut d);
    Ok(Configuration::from_sorted_unchecked(d))
}

/// Eigenvalues of `[[a, b], [b, c]]`, larger first, computed without
/// cancellation in the smaller one.
fn eig2<T: Scalar>(a: T, b: T, c: T) -> (T, T) {
    let half = T::of(0.5);
    let sm = a + c;
    let adf = (a - c).abs();
    let ab = (b + b).abs();
    let (acmx, acmn) = if a.abs() > c.abs() { (a, c) } else { (c, a) };
    let rt = if adf > ab {
        adf * (T::one() + (ab / adf).powi(2)).sqrt()
    } else if adf < ab {
        ab * (T::one() + (adf / ab).powi(2)).sqrt()
    } else {
        ab * T::SQRT_2()
    };
    if sm < T::zero() {
        let rt1 = half * (sm - rt);
        let rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
        (rt2, rt1)
    } else if sm > T::zero() {
        let rt1 = half * (sm + rt);
        let rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
        (rt1, rt2)
    } else {
        (half * rt, -half * rt)
    }
}
