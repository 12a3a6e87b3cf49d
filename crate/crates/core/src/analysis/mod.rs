//! Statistics of empirical measures: Wasserstein distances on the line,
//! comparison with the semicircle law, Kolmogorov–Smirnov distances and the
//! Hoffman–Wielandt inequality.

mod empirical;
mod semicircle;

pub use empirical::EmpiricalMeasure;
pub use semicircle::SemicircleLaw;

use serde::{Deserialize, Serialize};

use crate::ensemble::{eigenvalues_dense, HermitianDense};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

fn check_order<T: Scalar>(p: u32) -> Result<T> {
    match p {
        1 | 2 => Ok(T::of(f64::from(p))),
        _ => domain(format!("Wasserstein order must be 1 or 2, got {p}")),
    }
}

/// Exact `W_p` between two empirical measures on the line via the quantile
/// coupling. Equal atom counts reduce to the sorted pairing.
pub fn wasserstein_1d<T: Scalar>(p: u32, a: &EmpiricalMeasure<T>, b: &EmpiricalMeasure<T>) -> Result<T> {
    let pf = check_order::<T>(p)?;
    let (na, nb) = (a.len(), b.len());
    let mut total = T::zero();
    if na == nb {
        for (x, y) in a.atoms().iter().zip(b.atoms()) {
            total = total + (*x - *y).abs().powf(pf);
        }
        total = total / T::of_usize(na);
    } else {
        // merge the breakpoints i/na and j/nb, both quantiles constant in between
        let (mut i, mut j) = (0usize, 0usize);
        let mut prev = T::zero();
        while i < na && j < nb {
            let ua = T::of_usize(i + 1) / T::of_usize(na);
            let ub = T::of_usize(j + 1) / T::of_usize(nb);
            let next = ua.min(ub);
            total = total + (next - prev) * (a.atoms()[i] - b.atoms()[j]).abs().powf(pf);
            prev = next;
            // advance by exact integer comparison of (i+1)/na against (j+1)/nb
            let lhs = (i + 1) * nb;
            let rhs = (j + 1) * na;
            if lhs <= rhs {
                i += 1;
            }
            if rhs <= lhs {
                j += 1;
            }
        }
    }
    Ok(total.powf(T::one() / pf))
}

/// `W_p` between an empirical measure and the semicircle law by midpoint
/// quadrature of `∫_0^1 |F_a^{-1}(u) - F^{-1}(u)|^p du` over the merged
/// breakpoints `{i/n} ∪ {j/grid}`. On each cell the empirical quantile is
/// constant, so the error comes only from the semicircle quantile and is
/// `O(1/grid)` in `W_p^p` (the quantile is bounded by the edge and monotone).
pub fn wasserstein_to_semicircle<T: Scalar>(
    p: u32,
    a: &EmpiricalMeasure<T>,
    law: &SemicircleLaw<T>,
    grid: usize,
) -> Result<T> {
    let pf = check_order::<T>(p)?;
    if grid < 1000 {
        return domain(format!("quadrature grid must be at least 1000, got {grid}"));
    }
    let n = a.len();
    let (mut i, mut j) = (0usize, 0usize);
    let mut prev = T::zero();
    let mut total = T::zero();
    while i < n && j < grid {
        let lhs = (i + 1) * grid;
        let rhs = (j + 1) * n;
        let next = if lhs <= rhs {
            T::of_usize(i + 1) / T::of_usize(n)
        } else {
            T::of_usize(j + 1) / T::of_usize(grid)
        };
        let mid = (prev + next) / T::of(2.0);
        total = total + (next - prev) * (a.atoms()[i] - law.quantile(mid)).abs().powf(pf);
        prev = next;
        if lhs <= rhs {
            i += 1;
        }
        if rhs <= lhs {
            j += 1;
        }
    }
    Ok(total.powf(T::one() / pf))
}

/// Sup distance between the empirical CDF and `cdf`.
pub fn ks_distance<T: Scalar>(a: &EmpiricalMeasure<T>, cdf: impl Fn(T) -> T) -> T {
    let n = T::of_usize(a.len());
    a.atoms()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = T::of_usize(i + 1) / n - f;
            let below = f - T::of_usize(i) / n;
            above.max(below)
        })
        .fold(T::zero(), T::max)
}

/// Sup distance between two empirical CDFs.
pub fn ks_two_sample<T: Scalar>(a: &EmpiricalMeasure<T>, b: &EmpiricalMeasure<T>) -> T {
    let mut d = T::zero();
    for &x in a.atoms().iter().chain(b.atoms()) {
        d = d.max((a.cdf(x) - b.cdf(x)).abs());
    }
    d
}

/// Both sides of `Σ (x_i(A) - x_i(B))^2 ≤ ||A - B||_HS^2` with eigenvalues sorted.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoffmanWielandtReport<T = f64> {
    pub lhs: T,
    pub rhs: T,
}

impl<T: Scalar> HoffmanWielandtReport<T> {
    /// Whether `lhs ≤ rhs` up to a relative tolerance.
    pub fn holds(&self, rel_tol: T) -> bool {
        self.lhs <= self.rhs + rel_tol * (T::one() + self.rhs)
    }
}

pub fn hoffman_wielandt_check<T: Scalar>(a: &HermitianDense<T>, b: &HermitianDense<T>) -> Result<HoffmanWielandtReport<T>> {
    if a.order() != b.order() {
        return domain(format!("matrix orders differ: {} vs {}", a.order(), b.order()));
    }
    let tol = T::epsilon();
    let ea = eigenvalues_dense(a, tol)?;
    let eb = eigenvalues_dense(b, tol)?;
    let lhs = ea
        .points()
        .iter()
        .zip(eb.points())
        .map(|(x, y)| (*x - *y) * (*x - *y))
        .sum::<T>();
    let rhs = a.hs_distance_sq(b)?;
    Ok(HoffmanWielandtReport { lhs, rhs })
}
