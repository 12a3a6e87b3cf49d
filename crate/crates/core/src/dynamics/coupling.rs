use serde::{Deserialize, Serialize};

use super::scheme::{step_with_noise, DouParams, PathState, StepNoise};
use crate::ensemble::Configuration;
use crate::error::{domain, Result};
use crate::prob::{replicate, RngStream};
use crate::stats::ls_slope;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CouplingPoint {
    pub t: f64,
    pub distance: f64,
}

fn distance(x: &Configuration, y: &Configuration) -> f64 {
    x.points()
        .iter()
        .zip(y.points())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Runs two solutions on the same Brownian increments and records
/// `|X_t - Y_t|` at `t = 0` and every `record_every` steps.
pub fn couple(
    params: &DouParams,
    x0: Configuration,
    y0: Configuration,
    rng: &mut RngStream,
    record_every: u64,
) -> Result<Vec<CouplingPoint>> {
    let n = params.model().n();
    if x0.len() != n || y0.len() != n {
        return domain(format!("starting points must have n = {n} coordinates"));
    }
    if record_every == 0 {
        return domain("record_every must be positive");
    }
    let mut xs = PathState::new(x0);
    let mut ys = PathState::new(y0);
    let mut out = vec![CouplingPoint {
        t: 0.0,
        distance: distance(&xs.x, &ys.x),
    }];
    let n_steps = params.n_steps();
    for k in 1..=n_steps {
        let noise = StepNoise::draw(params, rng);
        step_with_noise(params, &mut xs, &noise);
        step_with_noise(params, &mut ys, &noise);
        if k % record_every == 0 || k == n_steps {
            out.push(CouplingPoint {
                t: xs.t,
                distance: distance(&xs.x, &ys.x),
            });
        }
    }
    Ok(out)
}

/// Coupling upper bounds `E[|X_t - Y_t|^p]^{1/p} ≥ W_p(ν0 P_t, ν1 P_t)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayTable {
    pub p: u32,
    pub times: Vec<f64>,
    pub bounds: Vec<f64>,
    /// Least-squares decay rate `-d log(bound)/dt` over the positive bounds;
    /// `None` when fewer than two are positive.
    pub rate: Option<f64>,
}

/// Replica `i` draws both initial points from clones of one stream
/// (common random numbers, so `ν0 = ν1` gives the zero coupling) and then
/// runs [`couple`].
pub fn wasserstein_decay_experiment<F0, F1>(
    params: &DouParams,
    nu0: F0,
    nu1: F1,
    p: u32,
    reps: usize,
    rng: &RngStream,
    record_every: u64,
) -> Result<DecayTable>
where
    F0: Fn(&mut RngStream) -> Result<Configuration> + Sync,
    F1: Fn(&mut RngStream) -> Result<Configuration> + Sync,
{
    if p != 1 && p != 2 {
        return domain(format!("Wasserstein order must be 1 or 2, got {p}"));
    }
    if reps == 0 {
        return domain("reps must be positive");
    }
    let paths = replicate(rng, reps, |r| -> Result<Vec<CouplingPoint>> {
        let mut init = r.fork(0);
        let x0 = nu0(&mut init.clone())?;
        let y0 = nu1(&mut init)?;
        couple(params, x0, y0, &mut r.fork(1), record_every)
    });
    let paths = paths.into_iter().collect::<Result<Vec<_>>>()?;
    let times: Vec<f64> = paths[0].iter().map(|c| c.t).collect();
    let pf = f64::from(p);
    let bounds: Vec<f64> = (0..times.len())
        .map(|k| {
            let m = paths.iter().map(|path| path[k].distance.powf(pf)).sum::<f64>() / reps as f64;
            m.powf(1.0 / pf)
        })
        .collect();
    let (tx, ly): (Vec<f64>, Vec<f64>) = times
        .iter()
        .zip(&bounds)
        .filter(|(_, b)| **b > 0.0)
        .map(|(t, b)| (*t, b.ln()))
        .unzip();
    let rate = if tx.len() >= 2 { ls_slope(&tx, &ly).map(|s| -s) } else { None };
    Ok(DecayTable {
        p,
        times,
        bounds,
        rate,
    })
}
