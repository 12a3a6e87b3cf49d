//! Exact expectations under the invariant law, from stationarity:
//! `E[G p_λ] = 0` gives `E[p_λ] = E[L p_λ] / (rho |λ|)` with `L` the
//! degree-lowering part of `G`, and `E[1] = 1`.

use std::collections::HashMap;

use super::coeff::Coeff;
use super::generator::{lowering_operator, GeneratorParams};
use super::partition::Partition;
use super::poly::SymPolynomial;
use crate::error::Result;

/// Memoized exact moments for one parameter set.
pub struct Moments<C> {
    params: GeneratorParams<C>,
    cache: HashMap<Partition, C>,
}

impl<C: Coeff> Moments<C> {
    pub fn new(params: GeneratorParams<C>) -> Self {
        Self {
            params,
            cache: HashMap::new(),
        }
    }

    pub fn params(&self) -> &GeneratorParams<C> {
        &self.params
    }

    fn power_sum_moment(&mut self, lambda: &Partition) -> Result<C> {
        if lambda.is_empty() {
            return Ok(C::one());
        }
        if let Some(v) = self.cache.get(lambda) {
            return Ok(v.clone());
        }
        let v = if lambda.weight() % 2 == 1 {
            C::zero()
        } else {
            let n = self.params.n();
            let lowered = lowering_operator(&self.params, &SymPolynomial::monomial(n, lambda.clone(), C::one()))?;
            let inner = self.expectation(&lowered)?;
            inner / (self.params.rho().clone() * C::from_int(i64::from(lambda.weight())))
        };
        self.cache.insert(lambda.clone(), v.clone());
        Ok(v)
    }

    /// `E[f]`.
    pub fn expectation(&mut self, f: &SymPolynomial<C>) -> Result<C> {
        let mut acc = C::zero();
        for (lambda, c) in f.terms() {
            acc = acc + c.clone() * self.power_sum_moment(lambda)?;
        }
        Ok(acc)
    }

    /// `E[f g]`.
    pub fn inner_product(&mut self, f: &SymPolynomial<C>, g: &SymPolynomial<C>) -> Result<C> {
        self.expectation(&f.mul(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::coeff::{rat, RatFunc};
    use num_traits::One;
    use num_rational::BigRational;

    #[test]
    fn second_moments() {
        for n in 1..=4usize {
            let ni = n as i64;
            let mut m = Moments::new(GeneratorParams::symbolic(n).unwrap());
            // E p2 = 1 + beta (n-1)/2
            let e2 = m.expectation(&SymPolynomial::power_sum(n, 2)).unwrap();
            assert_eq!(
                e2,
                RatFunc::one() + RatFunc::beta() * RatFunc::from_rational(&rat(ni - 1, 2))
            );
            // trace is N(0, 1): E p1^2 = 1
            let p1 = SymPolynomial::power_sum(n, 1);
            assert_eq!(m.inner_product(&p1, &p1).unwrap(), RatFunc::one());
        }
    }

    #[test]
    fn gaussian_case_matches_independent_normals() {
        // beta = 0, rho = n: coordinates iid N(0, 1/n); E p4 = 3 n / n^2
        let n = 3;
        let mut m = Moments::new(GeneratorParams::rational(n, rat(0, 1)).unwrap());
        let e4 = m.expectation(&SymPolynomial::power_sum(n, 4)).unwrap();
        assert_eq!(e4, rat(1, 1));
        let p2 = SymPolynomial::<BigRational>::power_sum(n, 2);
        // Var p2 = n · 2/n^2
        let var = m.inner_product(&p2, &p2).unwrap() - rat(1, 1);
        assert_eq!(var, rat(2, 3));
    }

    #[test]
    fn gue_fourth_moment() {
        // GUE with entry variance 1/n: E Tr H^4 = 2n + 1/n
        let mut m = Moments::new(GeneratorParams::rational(2, rat(2, 1)).unwrap());
        assert_eq!(m.expectation(&SymPolynomial::power_sum(2, 4)).unwrap(), rat(9, 2));
        let mut m = Moments::new(GeneratorParams::rational(3, rat(2, 1)).unwrap());
        assert_eq!(m.expectation(&SymPolynomial::power_sum(3, 4)).unwrap(), rat(19, 3));
    }
}
