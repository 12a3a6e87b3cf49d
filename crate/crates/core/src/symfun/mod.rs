//! Exact algebra of symmetric polynomials in the power-sum basis, the
//! generator of the log-gas dynamics acting on them, and its polynomial
//! eigenfunctions.
//!
//! Polynomials are generic over the coefficient field ([`Coeff`]):
//! [`RatFunc`] keeps `beta` symbolic, `BigRational` fixes it exactly and
//! `f64` is for numeric use. Power sums satisfy `p_0 = n`.

mod coeff;
mod generator;
mod lassalle;
mod moments;
mod partition;
mod poly;
mod reduce;

pub use coeff::{parse_rational, Coeff, Poly, RatFunc};
pub use generator::{apply_generator, lowering_operator, GeneratorMatrix, GeneratorParams};
pub use lassalle::{hermite_lassalle, LassalleEntry};
pub use moments::Moments;
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use poly::{parse_coefficient, SymPolynomial};
pub use reduce::reduce_power_sum;

use crate::ensemble::{sample_spectrum, GasModel};
use crate::error::{domain, Result};
use crate::prob::{replicate, McEstimate, RngStream, Welford};

/// Monte Carlo estimate of `E[f g]` under the ensemble, with `beta` taken
/// from `model` for symbolic coefficients.
pub fn mc_inner_product<C: Coeff>(
    model: &GasModel,
    f: &SymPolynomial<C>,
    g: &SymPolynomial<C>,
    reps: usize,
    rng: &RngStream,
) -> Result<McEstimate> {
    if f.n_vars() != model.n() || g.n_vars() != model.n() {
        return domain("polynomial variable count differs from n");
    }
    if reps == 0 {
        return domain("reps must be positive");
    }
    let beta = model.beta();
    let fnum = f.to_numeric(beta);
    let gnum = g.to_numeric(beta);
    if fnum.degree() == 0 && gnum.degree() == 0 {
        let c = fnum.coefficient(&Partition::empty()) * gnum.coefficient(&Partition::empty());
        return Ok(McEstimate::exact(c));
    }
    let values = replicate(rng, reps, |r| -> Result<f64> {
        let x = sample_spectrum(model, r)?;
        Ok(fnum.evaluate(x.points(), beta)? * gnum.evaluate(x.points(), beta)?)
    });
    let mut w = Welford::new();
    for v in values {
        w.push(v?);
    }
    Ok(w.estimate())
}
