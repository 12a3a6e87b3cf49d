//! Monte Carlo checks of the Poincaré and logarithmic Sobolev inequalities,
//! the Herbst bound on Laplace transforms, Gaussian concentration of
//! Lipschitz functions, and the factorization of the law along `(1, …, 1)`.
//!
//! All estimates draw exact samples from the ensemble, in parallel with one
//! stream per replica, so results do not depend on the thread count.

mod checks;
mod function;

pub use checks::{
    concentration_tails, dkw_threshold, factorization_check, herbst_laplace_check, lsi_check, poincare_check,
    CorrelationEntry, DeficitReport, FactorizationReport, HerbstReport, HerbstRow, TailReport, TailRow, Verdict,
    BATCHES, EQUALITY_SIGMAS, MIN_REPS, VIOLATION_SIGMAS, WILSON_Z,
};
pub use function::{Profile, TestFunction};
