//! Seedable random streams, the scalar samplers built on them, and Monte Carlo bookkeeping.

mod estimate;
mod rng;
mod sampling;

pub use estimate::{McEstimate, Welford};
pub use rng::RngStream;
pub use sampling::{sample_chi, sample_gamma, sample_gaussian, standard_normal};

use rayon::prelude::*;

/// Runs `reps` independent replicas in parallel.
///
/// Replica `i` receives `rng.fork(i)`, so the returned vector (in replica order)
/// does not depend on the number of worker threads.
pub fn replicate<R, F>(rng: &RngStream, reps: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(&mut RngStream) -> R + Sync,
{
    (0..reps as u64)
        .into_par_iter()
        .map(|i| {
            let mut stream = rng.fork(i);
            f(&mut stream)
        })
        .collect()
}
