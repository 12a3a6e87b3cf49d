//! Exact action of the generator
//! `G f = Δf - rho Σ x_i ∂_i f + (beta/2) Σ_{i≠j} (∂_i f - ∂_j f)/(x_i - x_j)`
//! on symmetric polynomials written in power sums.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::coeff::{Coeff, RatFunc};
use super::partition::{partitions_up_to, Partition};
use super::poly::SymPolynomial;
use crate::ensemble::GasModel;
use crate::error::{domain, Result};

/// Parameters of the generator over a coefficient field: `beta` may be the
/// symbolic indeterminate.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorParams<C> {
    n: usize,
    beta: C,
    rho: C,
}

impl<C: Coeff> GeneratorParams<C> {
    pub fn new(n: usize, beta: C, rho: C) -> Result<Self> {
        if n == 0 {
            return domain("particle count n must be at least 1");
        }
        if rho.is_zero() {
            return domain("rho must be nonzero");
        }
        Ok(Self { n, beta, rho })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn beta(&self) -> &C {
        &self.beta
    }

    pub fn rho(&self) -> &C {
        &self.rho
    }
}

impl GeneratorParams<RatFunc> {
    /// Symbolic `beta`, `rho = n`.
    pub fn symbolic(n: usize) -> Result<Self> {
        Self::new(n, RatFunc::beta(), RatFunc::from_int(n as i64))
    }
}

impl GeneratorParams<BigRational> {
    /// Rational `beta >= 0`, `rho = n`. `beta = 0` is the Ornstein–Uhlenbeck case.
    pub fn rational(n: usize, beta: BigRational) -> Result<Self> {
        if beta < BigRational::from_int(0) {
            return domain(format!("beta must be nonnegative, got {beta}"));
        }
        Self::new(n, beta, BigRational::from_int(n as i64))
    }
}

impl GeneratorParams<f64> {
    pub fn from_model(model: &GasModel) -> Self {
        Self {
            n: model.n(),
            beta: model.beta(),
            rho: model.rho(),
        }
    }
}

/// Accumulates `c · Π p_{parts}` with `p_0 = n`.
struct Accumulator<C> {
    n: usize,
    terms: BTreeMap<Partition, C>,
}

impl<C: Coeff> Accumulator<C> {
    fn new(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    fn push(&mut self, parts: Vec<u32>, c: C) {
        let zeros = parts.iter().filter(|&&p| p == 0).count();
        let factor = C::from_int((self.n as i64).pow(zeros as u32));
        let key = Partition::from_parts(parts);
        let c = c * factor;
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(key, c);
                }
            }
        }
    }

    fn finish(self) -> SymPolynomial<C> {
        let mut out = SymPolynomial::zero(self.n);
        for (l, c) in self.terms {
            out.add_term(l, c);
        }
        out
    }
}

fn without(parts: &[u32], skip: &[usize]) -> Vec<u32> {
    parts
        .iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, &p)| p)
        .collect()
}

/// Degree-lowering part `Δ + interaction` applied to `c · p_λ`.
fn push_lowering<C: Coeff>(acc: &mut Accumulator<C>, params: &GeneratorParams<C>, lambda: &Partition, c: &C) {
    let parts = lambda.parts();
    let half = C::from_rational(&super::coeff::rat(1, 2));
    for (a, &k) in parts.iter().enumerate() {
        if k >= 2 {
            let rest = without(parts, &[a]);
            let k_c = C::from_int(i64::from(k));
            // Δ p_k = k (k-1) p_{k-2}
            let mut single = rest.clone();
            single.push(k - 2);
            acc.push(single.clone(), c.clone() * C::from_int(i64::from(k * (k - 1))));
            // interaction on p_k: beta k · ½ (Σ_{s+t=k-2} p_s p_t - (k-1) p_{k-2})
            let scaled = c.clone() * params.beta.clone() * k_c * half.clone();
            acc.push(single, -(scaled.clone() * C::from_int(i64::from(k - 1))));
            for s in 0..=k - 2 {
                let mut pair = rest.clone();
                pair.push(s);
                pair.push(k - 2 - s);
                acc.push(pair, scaled.clone());
            }
        }
        // cross terms of the Laplacian, ordered pairs a ≠ b
        for (b, &m) in parts.iter().enumerate() {
            if b != a {
                let mut cross = without(parts, &[a, b]);
                cross.push(k + m - 2);
                acc.push(cross, c.clone() * C::from_int(i64::from(k * m)));
            }
        }
    }
}

/// The part of `G` that lowers degree by two (everything but the Euler term).
pub fn lowering_operator<C: Coeff>(params: &GeneratorParams<C>, f: &SymPolynomial<C>) -> Result<SymPolynomial<C>> {
    check_vars(params, f)?;
    let mut acc = Accumulator::new(params.n);
    for (lambda, c) in f.terms() {
        push_lowering(&mut acc, params, lambda, c);
    }
    Ok(acc.finish())
}

fn check_vars<C: Coeff>(params: &GeneratorParams<C>, f: &SymPolynomial<C>) -> Result<()> {
    if f.n_vars() != params.n {
        return domain(format!(
            "polynomial in {} variables, generator for n = {}",
            f.n_vars(),
            params.n
        ));
    }
    Ok(())
}

/// Exact image `G f`.
pub fn apply_generator<C: Coeff>(params: &GeneratorParams<C>, f: &SymPolynomial<C>) -> Result<SymPolynomial<C>> {
    check_vars(params, f)?;
    let mut acc = Accumulator::new(params.n);
    for (lambda, c) in f.terms() {
        let euler = -(params.rho.clone() * C::from_int(i64::from(lambda.weight())));
        acc.push(lambda.parts().to_vec(), c.clone() * euler);
        push_lowering(&mut acc, params, lambda, c);
    }
    Ok(acc.finish())
}

/// Matrix of `G` on `{p_λ : |λ| ≤ d, ℓ(λ) ≤ n}`, stored by columns:
/// column `j` is `G p_{basis[j]}`.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix<C> {
    degree: u32,
    basis: Vec<Partition>,
    columns: Vec<SymPolynomial<C>>,
}

impl<C: Coeff> GeneratorMatrix<C> {
    pub fn build(params: &GeneratorParams<C>, degree: u32) -> Result<Self> {
        let basis = partitions_up_to(degree, params.n);
        let columns = basis
            .iter()
            .map(|l| apply_generator(params, &SymPolynomial::monomial(params.n, l.clone(), C::one())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            degree,
            basis,
            columns,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn column(&self, j: usize) -> &SymPolynomial<C> {
        &self.columns[j]
    }

    /// Coefficient of `p_{basis[i]}` in `G p_{basis[j]}`.
    pub fn entry(&self, i: usize, j: usize) -> C {
        self.columns[j].coefficient(&self.basis[i])
    }

    /// Whether every column stays within its degree and the diagonal
    /// block of degree `k` is `-rho k` times the identity.
    pub fn is_degree_triangular(&self, rho: &C) -> bool {
        self.basis.iter().enumerate().all(|(j, lj)| {
            let col = &self.columns[j];
            let k = lj.weight();
            col.degree() <= k
                && col.terms().all(|(li, c)| {
                    li.weight() < k
                        || if li == lj {
                            *c == -(rho.clone() * C::from_int(i64::from(k)))
                        } else {
                            c.is_zero()
                        }
                })
        })
    }
}
