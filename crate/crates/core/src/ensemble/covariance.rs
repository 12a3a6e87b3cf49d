use serde::{Deserialize, Serialize};

use super::model::GasModel;
use super::samplers::sample_spectrum;
use crate::error::{domain, Result};
use crate::prob::{replicate, McEstimate, RngStream};

/// Raw Monte Carlo mean and covariance of the ordered coordinates. No limit
/// shape is assumed or checked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoordinateMoments {
    pub mean: Vec<McEstimate>,
    /// Unbiased sample covariance, row-major `n × n`.
    pub covariance: Vec<Vec<f64>>,
    pub reps: u64,
}

pub fn coordinate_moments(model: &GasModel, reps: usize, rng: &RngStream) -> Result<CoordinateMoments> {
    if reps < 2 {
        return domain("covariance needs at least 2 replicas");
    }
    let draws = replicate(rng, reps, |r| sample_spectrum(model, r).map(|x| x.points().to_vec()))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let n = model.n();
    let mean: Vec<McEstimate> = (0..n)
        .map(|i| McEstimate::from_samples(draws.iter().map(|x| x[i])))
        .collect();
    let mut covariance = vec![vec![0.0; n]; n];
    for x in &draws {
        for i in 0..n {
            let di = x[i] - mean[i].mean;
            for j in i..n {
                covariance[i][j] += di * (x[j] - mean[j].mean);
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            covariance[i][j] /= (reps - 1) as f64;
            covariance[j][i] = covariance[i][j];
        }
    }
    Ok(CoordinateMoments {
        mean,
        covariance,
        reps: reps as u64,
    })
}
