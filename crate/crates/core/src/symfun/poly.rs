use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::coeff::{parse_rational, Coeff, RatFunc};
use super::partition::Partition;
use super::reduce::reduce_power_sum;
use crate::error::{domain, Result};

/// Symmetric polynomial in `n_vars` variables, stored in the power-sum
/// basis `{p_λ : ℓ(λ) ≤ n_vars}`. The empty partition is the constant `1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPolynomial<C> {
    n_vars: usize,
    terms: BTreeMap<Partition, C>,
}

impl<C: Coeff> SymPolynomial<C> {
    pub fn zero(n_vars: usize) -> Self {
        assert!(n_vars >= 1, "symmetric polynomial needs at least one variable");
        Self {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: C) -> Self {
        let mut out = Self::zero(n_vars);
        out.add_term(Partition::empty(), c);
        out
    }

    pub fn one(n_vars: usize) -> Self {
        Self::constant(n_vars, C::one())
    }

    /// `c · p_λ`, rewritten in the basis when `λ` has more than `n_vars` parts.
    pub fn monomial(n_vars: usize, lambda: Partition, c: C) -> Self {
        let mut out = Self::zero(n_vars);
        out.add_term(lambda, c);
        out
    }

    /// `p_k`; `p_0 = n_vars`.
    pub fn power_sum(n_vars: usize, k: u32) -> Self {
        if k == 0 {
            Self::constant(n_vars, C::from_int(n_vars as i64))
        } else {
            Self::monomial(n_vars, Partition::from_parts(vec![k]), C::one())
        }
    }

    /// Adds `c · p_λ` for any partition `λ`.
    pub fn add_term(&mut self, lambda: Partition, c: C) {
        if c.is_zero() {
            return;
        }
        if lambda.len() <= self.n_vars {
            self.add_basis_term(lambda, c);
        } else {
            for (nu, a) in reduce_power_sum(self.n_vars, &lambda).iter() {
                self.add_basis_term(nu.clone(), c.clone() * C::from_rational(a));
            }
        }
    }

    fn add_basis_term(&mut self, lambda: Partition, c: C) {
        match self.terms.remove(&lambda) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(lambda, s);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(lambda, c);
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, lambda: &Partition) -> C {
        self.terms.get(lambda).cloned().unwrap_or_else(C::zero)
    }

    /// Terms of weight exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        Self {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .filter(|(l, _)| l.weight() == k)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.n_vars);
        for (l, a) in &self.terms {
            out.add_basis_term(l.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (l, a) in &other.terms {
            out.add_basis_term(l.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = Self::zero(self.n_vars);
        for (l, a) in &self.terms {
            for (m, b) in &other.terms {
                out.add_term(l.union(m), a.clone() * b.clone());
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SymPolynomial<D> {
        let mut out = SymPolynomial::zero(self.n_vars);
        for (l, a) in &self.terms {
            out.add_basis_term(l.clone(), f(a));
        }
        out
    }

    /// Numeric coefficients at a given `beta`.
    pub fn to_numeric(&self, beta: f64) -> SymPolynomial<f64> {
        self.map_coeffs(|c| c.to_f64_at(beta))
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n_vars {
            return domain(format!(
                "point has {} coordinates, polynomial has {} variables",
                x.len(),
                self.n_vars
            ));
        }
        Ok(())
    }

    fn max_part(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|l| l.parts().first().copied())
            .max()
            .unwrap_or(0)
    }

    /// Value at `x`. `beta` is only used by coefficients that depend on it.
    pub fn evaluate(&self, x: &[f64], beta: f64) -> Result<f64> {
        self.check_len(x)?;
        let ps = power_sums(x, self.max_part());
        Ok(self
            .terms
            .iter()
            .map(|(l, c)| c.to_f64_at(beta) * l.parts().iter().map(|&k| ps[k as usize]).product::<f64>())
            .sum())
    }

    /// Gradient at `x`, from `∂_i p_k = k x_i^{k-1}` and the product rule.
    pub fn gradient(&self, x: &[f64], beta: f64) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let kmax = self.max_part();
        let ps = power_sums(x, kmax);
        let mut grad = vec![0.0; x.len()];
        for (l, c) in &self.terms {
            let c = c.to_f64_at(beta);
            let parts = l.parts();
            for (a, &k) in parts.iter().enumerate() {
                let others: f64 = parts
                    .iter()
                    .enumerate()
                    .filter(|&(b, _)| b != a)
                    .map(|(_, &m)| ps[m as usize])
                    .product();
                let factor = c * f64::from(k) * others;
                for (g, &xi) in grad.iter_mut().zip(x) {
                    *g += factor * xi.powi(k as i32 - 1);
                }
            }
        }
        Ok(grad)
    }
}

fn power_sums(x: &[f64], kmax: u32) -> Vec<f64> {
    let mut ps = vec![0.0; kmax as usize + 1];
    ps[0] = x.len() as f64;
    for &xi in x {
        let mut pw = 1.0;
        for slot in ps.iter_mut().skip(1) {
            pw *= xi;
            *slot += pw;
        }
    }
    ps
}

impl<C: Coeff> fmt::Display for SymPolynomial<C> {
    /// Renders as `c1·p[λ1] + c2·p[λ2] ...`, constants as `p[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*p[{l}]")?;
        }
        Ok(())
    }
}

impl SymPolynomial<RatFunc> {
    /// Specializes the symbolic `beta` to an exact rational.
    pub fn specialize(&self, beta: &BigRational) -> Result<SymPolynomial<BigRational>> {
        let mut out = SymPolynomial::zero(self.n_vars);
        for (l, c) in &self.terms {
            match c.eval(beta) {
                Some(v) => out.add_term(l.clone(), v),
                None => return domain(format!("coefficient {c} has a pole at beta = {beta}")),
            }
        }
        Ok(out)
    }
}

/// Parses a coefficient string: a rational, a decimal, or a rational
/// function of `b` (beta) in the form produced by `Display`.
pub fn parse_coefficient(s: &str) -> Option<RatFunc> {
    parse_rational(s)
        .map(|q| RatFunc::from_rational(&q))
        .or_else(|| RatFunc::parse(s))
}
