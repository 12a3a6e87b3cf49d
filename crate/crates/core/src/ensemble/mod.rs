//! Beta Hermite ensembles: model parameters, exact samplers and the symmetric
//! eigensolvers they rely on.
//!
//! The beta Hermite ensemble with confinement strength `rho` has density
//! proportional to `exp(-rho |x|^2 / 2) * prod_{i<j} (x_i - x_j)^beta` on the
//! closed Weyl chamber `x_1 >= ... >= x_n`. At `rho = n` it is the law of the
//! ordered eigenvalues of a scaled tridiagonal matrix with Gaussian diagonal and
//! chi-distributed off-diagonal; at `beta = 2` (resp. 1) it is also the spectrum
//! of a dense Gaussian Hermitian (resp. real symmetric) matrix.

mod covariance;
mod dense;
mod hessian;
mod model;
mod samplers;
pub mod sturm;
mod tridiagonal;

pub use covariance::{coordinate_moments, CoordinateMoments};
pub use dense::{eigenvalues_dense, HermitianDense};
pub use hessian::{hessian_check, HessianReport};
pub use model::{Configuration, GasModel};
pub use samplers::{sample_goe_dense, sample_gue_dense, sample_spectrum, sample_tridiagonal};
pub use tridiagonal::{eigenvalues_tridiagonal, TridiagonalSym, QL_MAX_ITERATIONS};
