use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::prob::RngStream;
use crate::scalar::Scalar;

/// Semicircle law with density `sqrt(2 beta - x^2) / (beta pi)` on `[-edge, edge]`,
/// `edge = sqrt(2 beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemicircleLaw<T = f64> {
    beta: T,
    edge: T,
}

impl<T: Scalar> SemicircleLaw<T> {
    pub fn new(beta: T) -> Result<Self> {
        if !(beta > T::zero() && beta.is_finite()) {
            return domain(format!("semicircle needs beta > 0, got {beta}"));
        }
        Ok(Self {
            beta,
            edge: (T::of(2.0) * beta).sqrt(),
        })
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn edge(&self) -> T {
        self.edge
    }

    pub fn density(&self, x: T) -> T {
        let r2 = self.edge * self.edge;
        if x.abs() >= self.edge {
            T::zero()
        } else {
            (r2 - x * x).sqrt() / (self.beta * T::PI())
        }
    }

    /// `1/2 + (θ + sin θ cos θ)/π` with `x = edge · sin θ`, clamped outside the support.
    pub fn cdf(&self, x: T) -> T {
        if x <= -self.edge {
            return T::zero();
        }
        if x >= self.edge {
            return T::one();
        }
        let theta = (x / self.edge).asin();
        T::of(0.5) + (theta + theta.sin() * theta.cos()) / T::PI()
    }

    /// Inverse CDF on `[0, 1]`: solves `2θ + sin 2θ = π(2u - 1)` by safeguarded Newton.
    pub fn quantile(&self, u: T) -> T {
        if u <= T::zero() {
            return -self.edge;
        }
        if u >= T::one() {
            return self.edge;
        }
        let two = T::of(2.0);
        let target = T::PI() * (two * u - T::one());
        let half_pi = T::FRAC_PI_2();
        let (mut lo, mut hi) = (-half_pi, half_pi);
        let mut theta = target / T::of(4.0);
        for _ in 0..100 {
            let g = two * theta + (two * theta).sin() - target;
            if g > T::zero() {
                hi = theta;
            } else {
                lo = theta;
            }
            let dg = two + two * (two * theta).cos();
            let mut next = theta - g / dg;
            if !(next > lo && next < hi) {
                next = (lo + hi) / two;
            }
            if (next - theta).abs() <= T::epsilon() * (T::one() + theta.abs()) {
                theta = next;
                break;
            }
            theta = next;
        }
        self.edge * theta.sin()
    }

    /// Exact draw by inversion.
    pub fn sample(&self, rng: &mut RngStream) -> T {
        self.quantile(T::of(rng.uniform_open()))
    }

    /// `∫ x^2 dν = beta / 2`.
    pub fn second_moment(&self) -> T {
        self.beta / T::of(2.0)
    }
}
