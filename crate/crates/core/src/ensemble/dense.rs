use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::model::Configuration;
use super::tridiagonal::{eigenvalues_tridiagonal, TridiagonalSym};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Dense Hermitian matrix, upper triangle only.
///
/// `upper` holds the strictly upper entries row by row:
/// `(0,1), (0,2), ..., (0,n-1), (1,2), ...`. Real symmetric matrices have zero
/// imaginary parts and are flagged by `real`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermitianDense<T = f64> {
    n: usize,
    diag: Vec<T>,
    upper: Vec<Complex<T>>,
    real: bool,
}

impl<T: Scalar> HermitianDense<T> {
    pub fn new(diag: Vec<T>, upper: Vec<Complex<T>>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return domain("matrix order must be at least 1");
        }
        if upper.len() != n * (n - 1) / 2 {
            return domain(format!(
                "expected {} strictly-upper entries, got {}",
                n * (n - 1) / 2,
                upper.len()
            ));
        }
        if diag.iter().any(|v| !v.is_finite()) || upper.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return domain("matrix has non-finite entries");
        }
        let real = upper.iter().all(|z| z.im == T::zero());
        Ok(Self {
            n,
            diag,
            upper,
            real,
        })
    }

    pub fn real_symmetric(diag: Vec<T>, upper: Vec<T>) -> Result<Self> {
        Self::new(diag, upper.into_iter().map(|re| Complex::new(re, T::zero())).collect())
    }

    pub fn diagonal(diag: Vec<T>) -> Result<Self> {
        let n = diag.len();
        Self::real_symmetric(diag, vec![T::zero(); n * n.saturating_sub(1) / 2])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn upper(&self) -> &[Complex<T>] {
        &self.upper
    }

    fn upper_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * self.n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Entry `(i, j)` of the full matrix.
    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Complex::new(self.diag[i], T::zero()),
            Less => self.upper[self.upper_index(i, j)],
            Greater => self.upper[self.upper_index(j, i)].conj(),
        }
    }

    pub fn trace(&self) -> T {
        self.diag.iter().copied().sum()
    }

    /// `Trace(H^2) = ||H||_HS^2`.
    pub fn trace_of_square(&self) -> T {
        let two = T::of(2.0);
        self.diag.iter().map(|&d| d * d).sum::<T>()
            + two * self.upper.iter().map(|z| z.norm_sqr()).sum::<T>()
    }

    /// Squared Hilbert–Schmidt distance `sum_{i,j} |A_ij - B_ij|^2`.
    pub fn hs_distance_sq(&self, other: &Self) -> Result<T> {
        if self.n != other.n {
            return domain("matrices have different orders");
        }
        let two = T::of(2.0);
        let diag: T = self.diag.iter().zip(&other.diag).map(|(a, b)| (*a - *b) * (*a - *b)).sum();
        let off: T = self.upper.iter().zip(&other.upper).map(|(a, b)| (*a - *b).norm_sqr()).sum();
        Ok(diag + two * off)
    }

    /// Unitary reduction to a real symmetric tridiagonal matrix with the same spectrum.
    ///
    /// Householder reflections bring the matrix to Hermitian tridiagonal form; a
    /// diagonal unitary similarity then replaces each sub-diagonal entry by its modulus.
    pub fn to_tridiagonal(&self) -> TridiagonalSym<T> {
        let n = self.n;
        let mut a: Vec<Complex<T>> = (0..n * n).map(|k| self.entry(k / n, k % n)).collect();
        let idx = |i: usize, j: usize| i * n + j;
        let two = T::of(2.0);
        let mut v = vec![Complex::new(T::zero(), T::zero()); n];
        let mut w = vec![Complex::new(T::zero(), T::zero()); n];

        for k in 0..n.saturating_sub(2) {
            let m = n - k - 1;
            let x0 = a[idx(k + 1, k)];
            let xnorm = (k + 1..n).map(|i| a[idx(i, k)].norm_sqr()).sum::<T>().sqrt();
            if xnorm == T::zero() {
                continue;
            }
            let phase = if x0.norm() == T::zero() {
                Complex::new(T::one(), T::zero())
            } else {
                x0 / x0.norm()
            };
            let alpha = -phase * xnorm;
            for t in 0..m {
                v[t] = a[idx(k + 1 + t, k)];
            }
            v[0] = v[0] - alpha;
            let vnorm = v[..m].iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
            if vnorm == T::zero() {
                continue;
            }
            for z in v[..m].iter_mut() {
                *z = *z / vnorm;
            }
            // p = B v on the trailing block, K = v* p (real), w = p - K v.
            for r in 0..m {
                let mut s = Complex::new(T::zero(), T::zero());
                for c in 0..m {
                    s = s + a[idx(k + 1 + r, k + 1 + c)] * v[c];
                }
                w[r] = s;
            }
            let kk = v[..m]
                .iter()
                .zip(&w[..m])
                .map(|(vi, pi)| (vi.conj() * pi).re)
                .sum::<T>();
            for r in 0..m {
                w[r] = w[r] - v[r] * kk;
            }
            for r in 0..m {
                for c in 0..m {
                    let upd = (v[r] * w[c].conj() + w[r] * v[c].conj()) * two;
                    a[idx(k + 1 + r, k + 1 + c)] = a[idx(k + 1 + r, k + 1 + c)] - upd;
                }
            }
            a[idx(k + 1, k)] = alpha;
            a[idx(k, k + 1)] = alpha.conj();
            for i in k + 2..n {
                a[idx(i, k)] = Complex::new(T::zero(), T::zero());
                a[idx(k, i)] = Complex::new(T::zero(), T::zero());
            }
        }
        let diag = (0..n).map(|i| a[idx(i, i)].re).collect();
        let offdiag = (0..n - 1).map(|i| a[idx(i + 1, i)].norm()).collect();
        TridiagonalSym::new(diag, offdiag).expect("reduction preserves shape and finiteness")
    }
}

/// Eigenvalues of a Hermitian matrix, decreasing: Householder reduction then implicit QL.
pub fn eigenvalues_dense<T: Scalar>(h: &HermitianDense<T>, tol: T) -> Result<Configuration<T>> {
    eigenvalues_tridiagonal(&h.to_tridiagonal(), tol)
}
