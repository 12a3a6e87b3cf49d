use super::coeff::Coeff;
use super::generator::{apply_generator, GeneratorMatrix, GeneratorParams};
use super::moments::Moments;
use super::partition::Partition;
use super::poly::SymPolynomial;
use crate::error::{domain, Error, Result};

/// One polynomial eigenfunction `G P = eigenvalue · P`.
#[derive(Clone, Debug, PartialEq)]
pub struct LassalleEntry<C> {
    pub partition: Partition,
    pub polynomial: SymPolynomial<C>,
    pub eigenvalue: C,
}

/// Hermite–Lassalle polynomials of weight `≤ max_degree`, one per partition
/// with at most `n` parts, ordered by weight and then lexicographically
/// decreasing.
///
/// Normalization: the coefficient of `p_λ` in `P_λ` is 1 (not unit `L²`
/// norm). Within a weight the polynomials are made orthogonal under the
/// invariant law by exact Gram–Schmidt in the listed order, so `P_λ` only
/// involves `p_κ` with `|κ| < |λ|`, or `|κ| = |λ|` and `κ` listed before `λ`.
pub fn hermite_lassalle<C: Coeff>(params: &GeneratorParams<C>, max_degree: u32) -> Result<Vec<LassalleEntry<C>>> {
    if max_degree == 0 {
        return domain("max_degree must be at least 1");
    }
    let n = params.n();
    let matrix = GeneratorMatrix::build(params, max_degree)?;
    let basis = matrix.basis();
    let index = |l: &Partition| basis.iter().position(|b| b == l);
    let mut moments = Moments::new(params.clone());
    let mut out: Vec<LassalleEntry<C>> = Vec::with_capacity(basis.len());
    let mut weight_start = 0;

    for lambda in basis {
        let k = lambda.weight();
        if out.last().is_some_and(|e| e.partition.weight() != k) {
            weight_start = out.len();
        }
        // Back-substitution down the degree blocks: with G = -rho·deg + L,
        // the degree-(d-2) part is -L(P_d) / (rho (k - d + 2)).
        let mut poly = SymPolynomial::monomial(n, lambda.clone(), C::one());
        let mut top = poly.clone();
        let mut d = k;
        while d >= 2 {
            let mut lowered = SymPolynomial::zero(n);
            for (mu, c) in top.terms() {
                let j = index(mu).ok_or_else(|| Error::Structural(format!("p[{mu}] outside the basis")))?;
                let mut col = matrix.column(j).clone();
                col = col.sub(&SymPolynomial::monomial(n, mu.clone(), -(params.rho().clone() * C::from_int(i64::from(d)))));
                lowered = lowered.add(&col.scale(c));
            }
            let denom = params.rho().clone() * C::from_int(i64::from(k - d + 2));
            top = lowered.scale(&(-(C::one() / denom)));
            poly = poly.add(&top);
            d -= 2;
        }
        for prev in &out[weight_start..] {
            let num = moments.inner_product(&poly, &prev.polynomial)?;
            if num.is_zero() {
                continue;
            }
            let den = moments.inner_product(&prev.polynomial, &prev.polynomial)?;
            if den.is_zero() {
                return Err(Error::Structural(format!("P[{}] has zero norm", prev.partition)));
            }
            poly = poly.sub(&prev.polynomial.scale(&(num / den)));
        }
        let eigenvalue = -(params.rho().clone() * C::from_int(i64::from(k)));
        let residual = apply_generator(params, &poly)?.sub(&poly.scale(&eigenvalue));
        let scale = poly.terms().map(|(_, c)| c.to_f64_at(1.0).abs()).fold(0.0, f64::max)
            * (1.0 + eigenvalue.to_f64_at(1.0).abs());
        if residual.terms().any(|(_, c)| !c.is_negligible(scale)) {
            return Err(Error::Structural(format!("P[{lambda}] fails the eigen-relation")));
        }
        out.push(LassalleEntry {
            partition: lambda.clone(),
            polynomial: poly,
            eigenvalue,
        });
    }
    Ok(out)
}
