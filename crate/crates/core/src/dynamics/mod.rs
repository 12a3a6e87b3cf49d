//! Euler–Maruyama integration of the Dyson–Ornstein–Uhlenbeck diffusion
//!
//! `dX^i = sqrt(2) dB^i - rho X^i dt + beta Σ_{j≠i} dt / (X^i - X^j)`
//!
//! kept in the closed Weyl chamber, and the parallel (synchronous) coupling
//! of two solutions.
//!
//! Boundary handling is by sorting, the projection onto the chamber. For
//! `beta >= 1` the exact process never collides and the projection only
//! corrects discretization overshoot; for `beta < 1` it is an approximation
//! of the reflected process whose bias is not quantified.

mod coupling;
mod scheme;

pub use coupling::{couple, wasserstein_decay_experiment, CouplingPoint, DecayTable};
pub use scheme::{
    simulate, step, step_with_noise, DouParams, PathState, Scheme, StepNoise, DEFAULT_DT_GUARD, DEFAULT_SUBSTEP_CAP,
};
