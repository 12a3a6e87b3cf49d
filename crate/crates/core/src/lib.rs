//! Sampling, dynamics, exact symmetric-function algebra and Monte Carlo
//! functional-inequality checks for the one-dimensional log-gas
//!
//! `mu(dx) ∝ exp(-rho |x|^2 / 2) Π_{i<j} (x_i - x_j)^beta dx` on `x_1 > … > x_n`,
//!
//! the beta Hermite ensemble when `rho = n`.
//!
//! Numeric types are generic over [`scalar::Scalar`] (`f32`, `f64`);
//! symmetric polynomials are generic over [`symfun::Coeff`]. The aliases
//! below fix the common choices.

pub mod analysis;
pub mod dynamics;
pub mod ensemble;
pub mod error;
pub mod inequalities;
pub mod prob;
pub mod scalar;
pub mod stats;
pub mod symfun;

pub use ensemble::{Configuration, GasModel};
pub use error::{Error, Result};
pub use prob::{McEstimate, RngStream};

/// Exact rationals.
pub type Rational = num_rational::BigRational;

pub type Configuration64 = ensemble::Configuration<f64>;
pub type Configuration32 = ensemble::Configuration<f32>;
pub type Tridiagonal64 = ensemble::TridiagonalSym<f64>;
pub type Tridiagonal32 = ensemble::TridiagonalSym<f32>;
pub type Hermitian64 = ensemble::HermitianDense<f64>;
pub type Hermitian32 = ensemble::HermitianDense<f32>;
pub type Empirical64 = analysis::EmpiricalMeasure<f64>;
pub type Empirical32 = analysis::EmpiricalMeasure<f32>;
pub type Semicircle64 = analysis::SemicircleLaw<f64>;
pub type Semicircle32 = analysis::SemicircleLaw<f32>;

/// Symmetric polynomial with coefficients rational in a symbolic `beta`.
pub type SymPolyBeta = symfun::SymPolynomial<symfun::RatFunc>;
/// Symmetric polynomial with exact rational coefficients (`beta` fixed).
pub type SymPolyQ = symfun::SymPolynomial<Rational>;
/// Symmetric polynomial with floating-point coefficients.
pub type SymPolyF64 = symfun::SymPolynomial<f64>;
