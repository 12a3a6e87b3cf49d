use serde::{Deserialize, Serialize};

use super::model::{Configuration, GasModel};
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Outcome of probing `Hess U(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HessianReport<T = f64> {
    /// Smallest Rayleigh quotient over the supplied directions (`+inf` if none).
    pub min_rayleigh: T,
    /// `<Hess U(x) u, u>` for the diagonal direction `u = (1, ..., 1) / sqrt(n)`.
    pub diag_eigval: T,
    /// `max_i |(Hess U(x) u - rho u)_i| / rho`.
    pub diag_residual: T,
}

/// Probes `Hess U(x) = rho I + beta sum_{i<j} (e_i - e_j)(e_i - e_j)^T / (x_i - x_j)^2`
/// along `directions` and along the diagonal direction.
///
/// The Hessian is applied pair by pair rather than assembled, so the
/// interaction terms vanish exactly on the diagonal direction even when two
/// points nearly collide. Directions need not be normalized; zero vectors are
/// rejected.
pub fn hessian_check<T: Scalar>(
    model: &GasModel,
    x: &Configuration<T>,
    directions: &[Vec<T>],
) -> Result<HessianReport<T>> {
    let n = model.n();
    if x.len() != n {
        return domain(format!("configuration has {} points, model has n = {n}", x.len()));
    }
    if !x.is_strict() {
        return domain("Hessian is singular on the chamber boundary (tied points)");
    }
    let rho = T::of(model.rho());
    let beta = T::of(model.beta());
    let p = x.points();
    let apply = |v: &[T]| -> Vec<T> {
        let mut out: Vec<T> = v.iter().map(|&vi| rho * vi).collect();
        for i in 0..n {
            for j in i + 1..n {
                let d = p[i] - p[j];
                let t = beta * (v[i] - v[j]) / (d * d);
                out[i] = out[i] + t;
                out[j] = out[j] - t;
            }
        }
        out
    };

    let mut min_rayleigh = T::infinity();
    for dir in directions {
        if dir.len() != n {
            return domain(format!("direction has length {}, expected {n}", dir.len()));
        }
        let nrm2: T = dir.iter().map(|&v| v * v).sum();
        if !(nrm2 > T::zero()) {
            return domain("zero direction");
        }
        let hv = apply(dir);
        let q = dir.iter().zip(&hv).map(|(&a, &b)| a * b).sum::<T>() / nrm2;
        min_rayleigh = min_rayleigh.min(q);
    }

    let u = vec![T::one() / T::of_usize(n).sqrt(); n];
    let hu = apply(&u);
    let diag_eigval = u.iter().zip(&hu).map(|(&a, &b)| a * b).sum();
    let diag_residual = u
        .iter()
        .zip(&hu)
        .map(|(&a, &b)| (b - rho * a).abs())
        .fold(T::zero(), T::max)
        / rho;
    Ok(HessianReport {
        min_rayleigh,
        diag_eigval,
        diag_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_computed_rayleigh() {
        // n = 2, beta = 1, rho = 2, x = (1, 0): along (1, -1)/sqrt(2) the rank-one
        // term adds beta * 2 / 1 = 2, so the quotient is 4.
        let m = GasModel::new(2, 1.0, 2.0).unwrap();
        let x = Configuration::new(vec![1.0, 0.0]).unwrap();
        let s = 0.5f64.sqrt();
        let r = hessian_check(&m, &x, &[vec![s, -s]]).unwrap();
        assert!((r.min_rayleigh - 4.0).abs() < 1e-14);
        assert!((r.diag_eigval - 2.0).abs() < 1e-14);
        assert_eq!(r.diag_residual, 0.0);
    }

    #[test]
    fn boundary_is_rejected() {
        let m = GasModel::hermite(3, 2.0).unwrap();
        let x = Configuration::new(vec![1.0, 1.0, 0.0]).unwrap();
        assert!(hessian_check(&m, &x, &[]).is_err());
        let y = Configuration::new(vec![2.0, 1.0, 0.0]).unwrap();
        assert!(hessian_check(&m, &y, &[vec![0.0; 3]]).is_err());
        assert!(hessian_check(&m, &y, &[vec![1.0; 2]]).is_err());
        let r = hessian_check::<f64>(&m, &y, &[]).unwrap();
        assert!(r.min_rayleigh.is_infinite());
    }
}
