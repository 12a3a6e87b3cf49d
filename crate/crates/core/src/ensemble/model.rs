use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Parameters `(n, beta, rho)` of the log-gas with confinement `rho |x|^2 / 2`
/// and interaction `-beta log(x_i - x_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    n: usize,
    beta: f64,
    rho: f64,
}

impl GasModel {
    pub fn new(n: usize, beta: f64, rho: f64) -> Result<Self> {
        if n == 0 {
            return domain("particle count n must be at least 1");
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return domain(format!("beta must be positive and finite, got {beta}"));
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return domain(format!("rho must be positive and finite, got {rho}"));
        }
        Ok(Self { n, beta, rho })
    }

    /// The beta Hermite ensemble proper, `rho = n`.
    pub fn hermite(n: usize, beta: f64) -> Result<Self> {
        Self::new(n, beta, n as f64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn is_hermite(&self) -> bool {
        self.rho == self.n as f64
    }

    /// Same `(n, beta)` with a different confinement strength.
    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::new(self.n, self.beta, rho)
    }

    /// Energy `U(x)`; `+inf` outside the open chamber.
    pub fn energy(&self, x: &[f64]) -> f64 {
        let mut u = 0.5 * self.rho * x.iter().map(|v| v * v).sum::<f64>();
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let d = x[i] - x[j];
                if d <= 0.0 {
                    return f64::INFINITY;
                }
                u -= self.beta * d.ln();
            }
        }
        u
    }

    /// Writes `-grad U(x)` into `out`. With `interaction = false` only the
    /// confinement force is included. Coinciding coordinates exert no force
    /// on each other.
    pub fn drift(&self, x: &[f64], out: &mut [f64], interaction: bool) {
        for (o, xi) in out.iter_mut().zip(x) {
            *o = -self.rho * xi;
        }
        if !interaction {
            return;
        }
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let d = x[i] - x[j];
                if d == 0.0 {
                    continue;
                }
                let f = self.beta / d;
                out[i] += f;
                out[j] -= f;
            }
        }
    }
}

/// A point of the closed Weyl chamber: coordinates in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration<T = f64> {
    points: Vec<T>,
}

impl<T: Scalar> Configuration<T> {
    /// Validates finiteness and weak decrease.
    pub fn new(points: Vec<T>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return domain("configuration has non-finite coordinates");
        }
        if let Some(k) = points.windows(2).position(|w| w[0] < w[1]) {
            return domain(format!(
                "configuration is not weakly decreasing at position {}",
                k + 1
            ));
        }
        Ok(Self { points })
    }

    /// Sorts arbitrary finite coordinates into decreasing order.
    pub fn from_unsorted(mut points: Vec<T>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return domain("configuration has non-finite coordinates");
        }
        sort_decreasing(&mut points);
        Ok(Self { points })
    }

    pub(crate) fn from_sorted_unchecked(points: Vec<T>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] >= w[1]));
        Self { points }
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn into_points(self) -> Vec<T> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// True when the configuration lies in the open chamber (no ties).
    pub fn is_strict(&self) -> bool {
        self.points.windows(2).all(|w| w[0] > w[1])
    }

    /// Smallest gap `x_i - x_{i+1}` (infinite for a single particle).
    pub fn min_gap(&self) -> T {
        self.points
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(T::infinity(), T::min)
    }

    pub fn sum(&self) -> T {
        self.points.iter().copied().sum()
    }

    pub fn norm_sq(&self) -> T {
        self.points.iter().map(|&p| p * p).sum()
    }

    /// Multiplies every coordinate by `s > 0`; order is preserved.
    pub fn scaled(&self, s: T) -> Self {
        Self {
            points: self.points.iter().map(|&p| p * s).collect(),
        }
    }
}

pub(crate) fn sort_decreasing<T: Scalar>(v: &mut [T]) {
    v.sort_by(|a, b| b.partial_cmp(a).expect("finite values"));
}
