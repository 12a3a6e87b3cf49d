use num_complex::Complex;

use super::dense::HermitianDense;
use super::model::{Configuration, GasModel};
use super::tridiagonal::{eigenvalues_tridiagonal, TridiagonalSym};
use crate::error::{domain, Result};
use crate::prob::{sample_chi, standard_normal, RngStream};

/// Scaled tridiagonal matrix whose ordered spectrum has the beta Hermite law at `rho = n`.
///
/// Diagonal entries are i.i.d. `N(0, 2) / sqrt(2n)`; the `k`-th off-diagonal entry
/// from the top is `chi_{(n-k) beta} / sqrt(2n)`, all independent.
pub fn sample_tridiagonal(model: &GasModel, rng: &mut RngStream) -> Result<TridiagonalSym<f64>> {
    if !model.is_hermite() {
        return domain(format!(
            "tridiagonal model realizes rho = n only (n = {}, rho = {})",
            model.n(),
            model.rho()
        ));
    }
    let n = model.n();
    let scale = 1.0 / (2.0 * n as f64).sqrt();
    let diag = (0..n)
        .map(|_| std::f64::consts::SQRT_2 * standard_normal(rng) * scale)
        .collect();
    let offdiag = (1..n)
        .map(|k| sample_chi(rng, (n - k) as f64 * model.beta()).map(|c| c * scale))
        .collect::<Result<Vec<_>>>()?;
    TridiagonalSym::new(diag, offdiag)
}

/// One exact draw from the ensemble.
///
/// Draws at `rho = n` through the tridiagonal model and rescales by
/// `sqrt(n / rho)`, which maps the `rho = n` law onto the general one.
pub fn sample_spectrum(model: &GasModel, rng: &mut RngStream) -> Result<Configuration<f64>> {
    let base = GasModel::hermite(model.n(), model.beta())?;
    let m = sample_tridiagonal(&base, rng)?;
    let spectrum = eigenvalues_tridiagonal(&m, f64::EPSILON)?;
    if model.is_hermite() {
        Ok(spectrum)
    } else {
        Ok(spectrum.scaled((model.n() as f64 / model.rho()).sqrt()))
    }
}

/// Dense GUE matrix with density proportional to `exp(-(n/2) Trace(h^2))`:
/// diagonal `N(0, 1/n)`, real and imaginary parts above it `N(0, 1/(2n))`.
pub fn sample_gue_dense(n: usize, rng: &mut RngStream) -> Result<HermitianDense<f64>> {
    if n == 0 {
        return domain("matrix order must be at least 1");
    }
    let nf = n as f64;
    let sd_diag = (1.0 / nf).sqrt();
    let sd_off = (1.0 / (2.0 * nf)).sqrt();
    let diag = (0..n).map(|_| sd_diag * standard_normal(rng)).collect();
    let upper = (0..n * (n - 1) / 2)
        .map(|_| {
            let re = sd_off * standard_normal(rng);
            let im = sd_off * standard_normal(rng);
            Complex::new(re, im)
        })
        .collect();
    HermitianDense::new(diag, upper)
}

/// Dense GOE matrix with density proportional to `exp(-(n/2) Trace(h^2))`:
/// diagonal `N(0, 1/n)`, entries above it `N(0, 1/(2n))`.
pub fn sample_goe_dense(n: usize, rng: &mut RngStream) -> Result<HermitianDense<f64>> {
    if n == 0 {
        return domain("matrix order must be at least 1");
    }
    let nf = n as f64;
    let sd_diag = (1.0 / nf).sqrt();
    let sd_off = (1.0 / (2.0 * nf)).sqrt();
    let diag = (0..n).map(|_| sd_diag * standard_normal(rng)).collect();
    let upper = (0..n * (n - 1) / 2).map(|_| sd_off * standard_normal(rng)).collect();
    HermitianDense::real_symmetric(diag, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{replicate, Welford};

    #[test]
    fn requires_hermite_scaling() {
        let m = GasModel::new(3, 2.0, 1.0).unwrap();
        assert!(sample_tridiagonal(&m, &mut RngStream::new(0, 0)).is_err());
        assert!(sample_spectrum(&m, &mut RngStream::new(0, 0)).is_ok());
    }

    #[test]
    fn single_particle_is_standard_normal() {
        let m = GasModel::hermite(1, 3.0).unwrap();
        let xs = replicate(&RngStream::new(1, 0), 200_000, |r| {
            sample_tridiagonal(&m, r).unwrap().diag()[0]
        });
        let w: Welford = xs.into_iter().collect();
        assert!(w.mean().abs() < 0.01);
        assert!((w.variance() - 1.0).abs() < 0.01);
    }

    #[test]
    fn offdiag_second_moment_n2_beta2() {
        let m = GasModel::hermite(2, 2.0).unwrap();
        let xs = replicate(&RngStream::new(2, 0), 1_000_000, |r| {
            sample_tridiagonal(&m, r).unwrap().offdiag()[0].powi(2)
        });
        let w: Welford = xs.into_iter().collect();
        assert!((w.mean() - 0.5).abs() < 0.01, "{}", w.mean());
    }

    #[test]
    fn spectra_are_strictly_decreasing() {
        for beta in [0.5, 1.0, 2.0, 4.0] {
            let m = GasModel::hermite(16, beta).unwrap();
            let mut r = RngStream::new(3, 0);
            for _ in 0..200 {
                assert!(sample_spectrum(&m, &mut r).unwrap().is_strict());
            }
        }
    }

    #[test]
    fn general_rho_single_particle_variance() {
        let m = GasModel::new(1, 1.0, 4.0).unwrap();
        let xs = replicate(&RngStream::new(4, 0), 200_000, |r| sample_spectrum(&m, r).unwrap().points()[0]);
        let w: Welford = xs.into_iter().collect();
        assert!((w.variance() - 0.25).abs() < 0.003, "{}", w.variance());
    }

    #[test]
    fn second_moment_n2_beta2() {
        let m = GasModel::hermite(2, 2.0).unwrap();
        let xs = replicate(&RngStream::new(6, 0), 200_000, |r| sample_spectrum(&m, r).unwrap().norm_sq());
        let e = crate::prob::McEstimate::from_samples(xs);
        assert!(e.within(2.0, 4.0), "{e:?}");
    }

    #[test]
    fn gue_trace_statistics() {
        let xs = replicate(&RngStream::new(7, 0), 100_000, |r| {
            let h = sample_gue_dense(8, r).unwrap();
            (h.trace(), h.trace_of_square())
        });
        let tr: Welford = xs.iter().map(|p| p.0).collect();
        let tr2 = crate::prob::McEstimate::from_samples(xs.iter().map(|p| p.1));
        assert!((tr.variance() - 1.0).abs() < 0.02);
        assert!(tr2.within(8.0, 4.0), "{tr2:?}");
        let one = sample_gue_dense(1, &mut RngStream::new(0, 0)).unwrap();
        assert_eq!(one.order(), 1);
    }
}
