use super::RngStream;
use crate::error::{domain, Result};

/// Standard normal variate by the Marsaglia polar method.
pub fn standard_normal(rng: &mut RngStream) -> f64 {
    if let Some(z) = rng.take_spare() {
        return z;
    }
    loop {
        let u = 2.0 * rng.uniform() - 1.0;
        let v = 2.0 * rng.uniform() - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            let factor = (-2.0 * s.ln() / s).sqrt();
            rng.store_spare(v * factor);
            return u * factor;
        }
    }
}

/// Draws from `N(mean, variance)`. A zero variance returns `mean` (one variate is still consumed).
pub fn sample_gaussian(rng: &mut RngStream, mean: f64, variance: f64) -> Result<f64> {
    if !(variance >= 0.0) || !mean.is_finite() {
        return domain(format!("gaussian needs finite mean and variance >= 0, got variance {variance}"));
    }
    let z = standard_normal(rng);
    Ok(mean + variance.sqrt() * z)
}

/// Draws from `Gamma(shape, rate)` (mean `shape / rate`).
///
/// Marsaglia–Tsang squeeze/rejection for `shape >= 1`; for `shape < 1` the boost
/// identity `G(a) = G(a + 1) * U^(1/a)`.
pub fn sample_gamma(rng: &mut RngStream, shape: f64, rate: f64) -> Result<f64> {
    if !(shape > 0.0 && shape.is_finite()) || !(rate > 0.0 && rate.is_finite()) {
        return domain(format!("gamma needs shape > 0 and rate > 0, got ({shape}, {rate})"));
    }
    Ok(gamma_unit(rng, shape) / rate)
}

fn gamma_unit(rng: &mut RngStream, shape: f64) -> f64 {
    if shape < 1.0 {
        let boosted = gamma_unit(rng, shape + 1.0);
        let u = rng.uniform_open();
        return boosted * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = standard_normal(rng);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = rng.uniform_open();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v;
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Draws from the chi distribution with `k > 0` (real) degrees of freedom,
/// as `sqrt(2 * Gamma(k / 2, 1))`.
pub fn sample_chi(rng: &mut RngStream, k: f64) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return domain(format!("chi needs k > 0, got {k}"));
    }
    Ok((2.0 * gamma_unit(rng, 0.5 * k)).sqrt())
}
