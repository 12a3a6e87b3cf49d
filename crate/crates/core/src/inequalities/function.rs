use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::symfun::SymPolynomial;

/// One-dimensional profile `f` of a linear statistic `(1/n) Σ f(x_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Identity,
    /// `Re 1/(x - z)`, `z = a + ib`, `b > 0`.
    StieltjesRe { a: f64, b: f64 },
    /// `Im 1/(x - z)`, `z = a + ib`, `b > 0`.
    StieltjesIm { a: f64, b: f64 },
}

impl Profile {
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Profile::Identity => x,
            Profile::StieltjesRe { a, b } => {
                let u = x - a;
                u / (u * u + b * b)
            }
            Profile::StieltjesIm { a, b } => {
                let u = x - a;
                b / (u * u + b * b)
            }
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            Profile::Identity => 1.0,
            Profile::StieltjesRe { a, b } => {
                let u = x - a;
                let d = u * u + b * b;
                (b * b - u * u) / (d * d)
            }
            Profile::StieltjesIm { a, b } => {
                let u = x - a;
                let d = u * u + b * b;
                -2.0 * u * b / (d * d)
            }
        }
    }

    /// Global Lipschitz constant; `1/b^2` bounds `|d/dx (x - z)^{-1}|`.
    pub fn lip(&self) -> f64 {
        match *self {
            Profile::Identity => 1.0,
            Profile::StieltjesRe { b, .. } | Profile::StieltjesIm { b, .. } => 1.0 / (b * b),
        }
    }
}

/// Test functions on the Weyl chamber with analytic gradients.
#[derive(Clone, Debug, PartialEq)]
pub enum TestFunction {
    /// `<a, x> + c`.
    Linear { a: Vec<f64>, c: f64 },
    /// `(1/n) Σ f(x_i)`.
    LinearStatistic(Profile),
    /// `max_i x_i = x_1` on the chamber; gradient `e_1`.
    MaxCoordinate,
    /// `exp(lambda Σ x_i + c)`.
    ExpLinear { lambda: f64, c: f64 },
    SymPoly(SymPolynomial<f64>),
}

impl TestFunction {
    /// Checks the function against the particle count.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            TestFunction::Linear { a, c } => {
                if a.len() != n {
                    return domain(format!("linear function has {} coefficients, n = {n}", a.len()));
                }
                if !c.is_finite() || a.iter().any(|v| !v.is_finite()) {
                    return domain("linear function coefficients must be finite");
                }
            }
            TestFunction::LinearStatistic(Profile::StieltjesRe { b, a } | Profile::StieltjesIm { b, a }) => {
                if !(*b > 0.0 && b.is_finite() && a.is_finite()) {
                    return domain(format!("Stieltjes profile needs Im z = b > 0, got b = {b}"));
                }
            }
            TestFunction::ExpLinear { lambda, c } => {
                if !lambda.is_finite() || !c.is_finite() {
                    return domain("exp-linear parameters must be finite");
                }
            }
            TestFunction::SymPoly(p) => {
                if p.n_vars() != n {
                    return domain(format!("polynomial has {} variables, n = {n}", p.n_vars()));
                }
            }
            TestFunction::LinearStatistic(Profile::Identity) | TestFunction::MaxCoordinate => {}
        }
        Ok(())
    }

    /// Global Lipschitz constant on the chamber, when one is known.
    pub fn lip(&self, n: usize) -> Option<f64> {
        match self {
            TestFunction::Linear { a, .. } => Some(a.iter().map(|v| v * v).sum::<f64>().sqrt()),
            TestFunction::LinearStatistic(f) => Some(f.lip() / (n as f64).sqrt()),
            TestFunction::MaxCoordinate => Some(1.0),
            TestFunction::ExpLinear { .. } | TestFunction::SymPoly(_) => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            TestFunction::Linear { a, .. } => a.iter().all(|&v| v == 0.0),
            TestFunction::ExpLinear { lambda, .. } => *lambda == 0.0,
            TestFunction::SymPoly(p) => p.degree() == 0,
            _ => false,
        }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        match self {
            TestFunction::Linear { a, c } => a.iter().zip(x).map(|(a, x)| a * x).sum::<f64>() + c,
            TestFunction::LinearStatistic(f) => x.iter().map(|&v| f.value(v)).sum::<f64>() / x.len() as f64,
            TestFunction::MaxCoordinate => x.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            TestFunction::ExpLinear { lambda, c } => (lambda * x.iter().sum::<f64>() + c).exp(),
            TestFunction::SymPoly(p) => p.evaluate(x, 0.0).expect("validated dimension"),
        }
    }

    pub fn gradient(&self, x: &[f64], out: &mut [f64]) {
        match self {
            TestFunction::Linear { a, .. } => out.copy_from_slice(a),
            TestFunction::LinearStatistic(f) => {
                let inv = 1.0 / x.len() as f64;
                for (o, &v) in out.iter_mut().zip(x) {
                    *o = f.derivative(v) * inv;
                }
            }
            TestFunction::MaxCoordinate => {
                out.fill(0.0);
                let k = x
                    .iter()
                    .enumerate()
                    .fold(0, |best, (i, &v)| if v > x[best] { i } else { best });
                out[k] = 1.0;
            }
            TestFunction::ExpLinear { lambda, .. } => {
                let g = lambda * self.value(x);
                out.fill(g);
            }
            TestFunction::SymPoly(p) => out.copy_from_slice(&p.gradient(x, 0.0).expect("validated dimension")),
        }
    }

    /// `|∇f(x)|^2`.
    pub fn gradient_norm_sq(&self, x: &[f64]) -> f64 {
        let mut g = vec![0.0; x.len()];
        self.gradient(x, &mut g);
        g.iter().map(|v| v * v).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lipschitz_constants() {
        let lin = TestFunction::Linear { a: vec![3.0, 4.0], c: 1.0 };
        assert_eq!(lin.lip(2), Some(5.0));
        let st = TestFunction::LinearStatistic(Profile::StieltjesIm { a: 0.0, b: 0.5 });
        assert_eq!(st.lip(4), Some(2.0));
        assert_eq!(TestFunction::MaxCoordinate.lip(9), Some(1.0));
        assert_eq!(TestFunction::ExpLinear { lambda: 0.3, c: 0.0 }.lip(3), None);
        assert!(TestFunction::LinearStatistic(Profile::StieltjesRe { a: 0.0, b: 0.0 })
            .validate(3)
            .is_err());
        assert!(lin.validate(3).is_err());
    }

    #[test]
    fn stieltjes_profiles_match_complex_arithmetic() {
        let z = num_complex::Complex::new(0.3, 0.7);
        for &x in &[-2.0, -0.1, 0.3, 1.7] {
            let w = 1.0 / (num_complex::Complex::new(x, 0.0) - z);
            assert!((Profile::StieltjesRe { a: 0.3, b: 0.7 }.value(x) - w.re).abs() < 1e-15);
            assert!((Profile::StieltjesIm { a: 0.3, b: 0.7 }.value(x) - w.im).abs() < 1e-15);
        }
    }
}
