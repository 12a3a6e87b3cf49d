use serde::{Deserialize, Serialize};

use crate::ensemble::Configuration;
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Equal-weight empirical measure; atoms kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMeasure<T = f64> {
    atoms: Vec<T>,
}

impl<T: Scalar> EmpiricalMeasure<T> {
    pub fn new(mut atoms: Vec<T>) -> Result<Self> {
        if atoms.is_empty() {
            return domain("empirical measure needs at least one atom");
        }
        if atoms.iter().any(|a| !a.is_finite()) {
            return domain("empirical measure atoms must be finite");
        }
        atoms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(Self { atoms })
    }

    pub fn from_configuration(x: &Configuration<T>) -> Result<Self> {
        Self::new(x.points().to_vec())
    }

    pub fn atoms(&self) -> &[T] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn min(&self) -> T {
        self.atoms[0]
    }

    pub fn max(&self) -> T {
        self.atoms[self.atoms.len() - 1]
    }

    /// `∫ x^k dL`.
    pub fn moment(&self, k: i32) -> T {
        self.atoms.iter().map(|&a| a.powi(k)).sum::<T>() / T::of_usize(self.len())
    }

    /// Right-continuous empirical CDF.
    pub fn cdf(&self, x: T) -> T {
        let count = self.atoms.partition_point(|&a| a <= x);
        T::of_usize(count) / T::of_usize(self.len())
    }

    /// Left-continuous quantile `inf{x : F(x) ≥ u}` for `u` in `(0, 1]`.
    pub fn quantile(&self, u: T) -> T {
        let n = self.len();
        let idx = (u * T::of_usize(n)).ceil().to_usize().unwrap_or(1).clamp(1, n);
        self.atoms[idx - 1]
    }

    /// Bin counts over `bins` equal cells of `[lo, hi)`; atoms outside are dropped.
    pub fn histogram(&self, lo: T, hi: T, bins: usize) -> Result<Vec<u64>> {
        if bins == 0 || hi.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater) {
            return domain("histogram needs bins >= 1 and hi > lo");
        }
        let mut counts = vec![0u64; bins];
        let width = (hi - lo) / T::of_usize(bins);
        for &a in &self.atoms {
            if a >= lo && a < hi {
                let b = ((a - lo) / width).to_usize().unwrap_or(0).min(bins - 1);
                counts[b] += 1;
            }
        }
        Ok(counts)
    }
}
