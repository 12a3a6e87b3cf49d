use serde::{Deserialize, Serialize};

use super::function::TestFunction;
use crate::analysis::{ks_distance, EmpiricalMeasure};
use crate::ensemble::{sample_spectrum, GasModel};
use crate::error::{domain, Error, Result};
use crate::prob::{replicate, McEstimate, RngStream, Welford};
use crate::stats::{correlation, normal_cdf, wilson_interval};

pub const MIN_REPS: usize = 1000;
pub const BATCHES: usize = 20;
/// Standard errors by which `lhs` must exceed `rhs` to count as a violation.
pub const VIOLATION_SIGMAS: f64 = 5.0;
/// Relative standard errors within which the ratio counts as 1.
pub const EQUALITY_SIGMAS: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    EqualityWithinError,
    StrictInequality,
    Violation,
}

/// Both sides of an inequality `lhs ≤ rhs` estimated on shared samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeficitReport {
    pub lhs: McEstimate,
    pub rhs: McEstimate,
    pub ratio: f64,
    /// Batch-means standard error of the ratio.
    pub ratio_std_error: f64,
    pub verdict: Verdict,
}

impl DeficitReport {
    fn classify(lhs: McEstimate, rhs: McEstimate, ratio: f64, ratio_std_error: f64) -> Self {
        let combined = (lhs.std_error.powi(2) + rhs.std_error.powi(2)).sqrt();
        let verdict = if lhs.mean - rhs.mean > VIOLATION_SIGMAS * combined {
            Verdict::Violation
        } else if (ratio - 1.0).abs() <= EQUALITY_SIGMAS * ratio_std_error {
            Verdict::EqualityWithinError
        } else {
            Verdict::StrictInequality
        };
        Self {
            lhs,
            rhs,
            ratio,
            ratio_std_error,
            verdict,
        }
    }

    fn trivial() -> Self {
        Self {
            lhs: McEstimate::exact(0.0),
            rhs: McEstimate::exact(0.0),
            ratio: 1.0,
            ratio_std_error: 0.0,
            verdict: Verdict::EqualityWithinError,
        }
    }
}

fn check_reps(reps: usize) -> Result<()> {
    if reps < MIN_REPS {
        return Err(Error::InsufficientReps(format!(
            "{reps} replicas requested, at least {MIN_REPS} needed"
        )));
    }
    Ok(())
}

/// Evaluates `g` on `reps` independent spectra, in replica order.
fn on_samples<R: Send>(
    model: &GasModel,
    reps: usize,
    rng: &RngStream,
    g: impl Fn(&[f64]) -> R + Sync,
) -> Result<Vec<R>> {
    replicate(rng, reps, |r| sample_spectrum(model, r).map(|x| g(x.points())))
        .into_iter()
        .collect()
}

fn batches(len: usize) -> impl Iterator<Item = std::ops::Range<usize>> {
    let size = len / BATCHES;
    (0..BATCHES).map(move |b| b * size..if b + 1 == BATCHES { len } else { (b + 1) * size })
}

/// Point estimate of `stat` on all samples, standard error from batch means.
fn batch_estimate<T>(samples: &[T], stat: impl Fn(&[T]) -> f64) -> McEstimate {
    let batch_values: Welford = batches(samples.len()).map(|r| stat(&samples[r])).collect();
    McEstimate {
        mean: stat(samples),
        std_error: (batch_values.variance() / BATCHES as f64).sqrt(),
        n_samples: samples.len() as u64,
    }
}

fn variance(xs: &[(f64, f64)]) -> f64 {
    let w: Welford = xs.iter().map(|p| p.0).collect();
    w.variance()
}

fn ratio_error<T>(samples: &[T], lhs: impl Fn(&[T]) -> f64, rhs: impl Fn(&[T]) -> f64) -> f64 {
    let w: Welford = batches(samples.len())
        .map(|r| lhs(&samples[r.clone()]) / rhs(&samples[r]))
        .collect();
    (w.variance() / BATCHES as f64).sqrt()
}

/// `var(f) ≤ (1/rho) E|∇f|^2`.
pub fn poincare_check(model: &GasModel, f: &TestFunction, reps: usize, rng: &RngStream) -> Result<DeficitReport> {
    check_reps(reps)?;
    f.validate(model.n())?;
    if f.is_constant() {
        return Ok(DeficitReport::trivial());
    }
    let rho = model.rho();
    let samples = on_samples(model, reps, rng, |x| (f.value(x), f.gradient_norm_sq(x) / rho))?;
    let dirichlet = |s: &[(f64, f64)]| s.iter().map(|p| p.1).sum::<f64>() / s.len() as f64;
    let lhs = batch_estimate(&samples, variance);
    let rhs = McEstimate::from_samples(samples.iter().map(|p| p.1));
    let ratio = lhs.mean / rhs.mean;
    let se = ratio_error(&samples, variance, dirichlet);
    Ok(DeficitReport::classify(lhs, rhs, ratio, se))
}

/// `ent(F)` from samples of `log F`, shifted by the maximum to avoid overflow.
fn entropy_from_logs(logs: &[f64]) -> f64 {
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return 0.0;
    }
    let len = logs.len() as f64;
    let (mut sw, mut swg) = (0.0, 0.0);
    for &g in logs {
        if g > f64::NEG_INFINITY {
            let w = (g - m).exp();
            sw += w;
            swg += w * (g - m);
        }
    }
    let mw = sw / len;
    m.exp() * (swg / len - mw * mw.ln())
}

/// `ent(f^2) ≤ (2/rho) E|∇f|^2`, entropy by plug-in. Only `f^2` enters,
/// so the sign of `f` is irrelevant.
pub fn lsi_check(model: &GasModel, f: &TestFunction, reps: usize, rng: &RngStream) -> Result<DeficitReport> {
    check_reps(reps)?;
    f.validate(model.n())?;
    if f.is_constant() {
        return Ok(DeficitReport::trivial());
    }
    let scale = 2.0 / model.rho();
    let samples = on_samples(model, reps, rng, |x| {
        let log_f2 = match f {
            TestFunction::ExpLinear { lambda, c } => 2.0 * (lambda * x.iter().sum::<f64>() + c),
            _ => {
                let v = f.value(x);
                (v * v).ln()
            }
        };
        (log_f2, scale * f.gradient_norm_sq(x))
    })?;
    let ent = |s: &[(f64, f64)]| entropy_from_logs(&s.iter().map(|p| p.0).collect::<Vec<_>>());
    let energy = |s: &[(f64, f64)]| s.iter().map(|p| p.1).sum::<f64>() / s.len() as f64;
    let lhs = batch_estimate(&samples, ent);
    let rhs = McEstimate::from_samples(samples.iter().map(|p| p.1));
    let ratio = lhs.mean / rhs.mean;
    let se = ratio_error(&samples, ent, energy);
    Ok(DeficitReport::classify(lhs, rhs, ratio, se))
}

fn require_lip(model: &GasModel, f: &TestFunction) -> Result<f64> {
    f.validate(model.n())?;
    match f.lip(model.n()) {
        Some(l) if l.is_finite() => Ok(l),
        _ => domain("this check needs a test function with a known Lipschitz constant"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HerbstRow {
    pub lambda: f64,
    /// `log E exp(lambda (F - E F))`.
    pub log_laplace: f64,
    pub std_error: f64,
    /// `lambda^2 Lip(F)^2 / (2 rho)`.
    pub bound: f64,
    /// `log_laplace ≤ bound + 4 std_error`.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HerbstReport {
    pub lip: f64,
    pub mean: McEstimate,
    pub rows: Vec<HerbstRow>,
}

impl HerbstReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Centered log-Laplace transform of `F` against its Gaussian bound.
pub fn herbst_laplace_check(
    model: &GasModel,
    f: &TestFunction,
    lambdas: &[f64],
    reps: usize,
    rng: &RngStream,
) -> Result<HerbstReport> {
    check_reps(reps)?;
    let lip = require_lip(model, f)?;
    let values = on_samples(model, reps, rng, |x| f.value(x))?;
    let mean = McEstimate::from_samples(values.iter().copied());
    let rows = lambdas
        .iter()
        .map(|&lambda| {
            let bound = lambda * lambda * lip * lip / (2.0 * model.rho());
            if lambda == 0.0 {
                return HerbstRow {
                    lambda,
                    log_laplace: 0.0,
                    std_error: 0.0,
                    bound,
                    holds: true,
                };
            }
            let e: Vec<f64> = values.iter().map(|v| lambda * (v - mean.mean)).collect();
            let m = e.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let w = McEstimate::from_samples(e.iter().map(|v| (v - m).exp()));
            let log_laplace = m + w.mean.ln();
            let std_error = w.std_error / w.mean;
            HerbstRow {
                lambda,
                log_laplace,
                std_error,
                bound,
                holds: log_laplace <= bound + EQUALITY_SIGMAS * std_error,
            }
        })
        .collect();
    Ok(HerbstReport { lip, mean, rows })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub r: f64,
    pub exceedances: u64,
    pub empirical: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    /// `2 exp(-rho r^2 / (2 Lip(F)^2))`.
    pub bound: f64,
    /// `empirical ≤ bound`.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub lip: f64,
    pub mean: f64,
    pub reps: u64,
    pub rows: Vec<TailRow>,
}

impl TailReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Two-sided Wilson intervals at this many standard deviations.
pub const WILSON_Z: f64 = 3.0;

/// Empirical `P(|F - E F| ≥ r)` against the Gaussian concentration bound.
/// Refuses grids whose largest `r` has `bound · reps < 10`, where the
/// empirical tail cannot resolve the bound.
pub fn concentration_tails(
    model: &GasModel,
    f: &TestFunction,
    r_grid: &[f64],
    reps: usize,
    rng: &RngStream,
) -> Result<TailReport> {
    check_reps(reps)?;
    let lip = require_lip(model, f)?;
    if r_grid.is_empty() || r_grid.iter().any(|r| !(*r >= 0.0 && r.is_finite())) {
        return domain("r grid must be nonempty with finite r >= 0");
    }
    let bound = |r: f64| 2.0 * (-model.rho() * r * r / (2.0 * lip * lip)).exp();
    let r_max = r_grid.iter().copied().fold(0.0, f64::max);
    if bound(r_max) * (reps as f64) < 10.0 {
        return domain(format!(
            "bound at r = {r_max} is {:.3e}; need bound * reps >= 10 (reps = {reps})",
            bound(r_max)
        ));
    }
    let values = on_samples(model, reps, rng, |x| f.value(x))?;
    let mean = values.iter().sum::<f64>() / reps as f64;
    let rows = r_grid
        .iter()
        .map(|&r| {
            let k = values.iter().filter(|v| (*v - mean).abs() >= r).count() as u64;
            let (lo, hi) = wilson_interval(k, reps as u64, WILSON_Z);
            let empirical = k as f64 / reps as f64;
            let b = bound(r);
            TailRow {
                r,
                exceedances: k,
                empirical,
                wilson_low: lo,
                wilson_high: hi,
                bound: b,
                holds: empirical <= b,
            }
        })
        .collect();
    Ok(TailReport {
        lip,
        mean,
        reps: reps as u64,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationEntry {
    pub statistic: String,
    pub correlation: f64,
    /// `correlation · sqrt(reps)`, approximately standard normal under independence.
    pub z: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub reps: u64,
    /// Variance of `S = <x, u>`, `u = (1, …, 1)/sqrt(n)`.
    pub var_s: McEstimate,
    pub var_s_target: f64,
    /// KS distance of `S sqrt(rho)` to N(0, 1).
    pub ks: f64,
    /// DKW threshold at 1% significance.
    pub ks_threshold: f64,
    pub correlations: Vec<CorrelationEntry>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.var_s.within(self.var_s_target, EQUALITY_SIGMAS)
            && self.ks < self.ks_threshold
            && self.correlations.iter().all(|c| c.z.abs() <= EQUALITY_SIGMAS)
    }
}

/// DKW bound `sqrt(ln(2/alpha) / (2 reps))`.
pub fn dkw_threshold(reps: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * reps as f64)).sqrt()
}

/// Splits samples into `S = <x, u>` and `Y = x - S u`, then tests the law of
/// `S` and its decorrelation from statistics of `Y`.
pub fn factorization_check(model: &GasModel, reps: usize, rng: &RngStream) -> Result<FactorizationReport> {
    check_reps(reps)?;
    let n = model.n();
    let sqrt_n = (n as f64).sqrt();
    // per sample: S, |Y|^2, max Y, Y_1 - Y_2
    let rows = on_samples(model, reps, rng, |x| {
        let s = x.iter().sum::<f64>() / sqrt_n;
        let shift = s / sqrt_n;
        let y_sq = x.iter().map(|v| (v - shift).powi(2)).sum::<f64>();
        let y_max = x[0] - shift;
        let gap = if n >= 2 { x[0] - x[1] } else { 0.0 };
        [s, y_sq, y_max, gap]
    })?;
    let s: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let s_mean = s.iter().sum::<f64>() / reps as f64;
    let var_s = McEstimate::from_samples(s.iter().map(|v| (v - s_mean).powi(2)));
    let scaled = EmpiricalMeasure::new(s.iter().map(|v| v * model.rho().sqrt()).collect())?;
    let ks = ks_distance(&scaled, normal_cdf);
    let mut correlations = Vec::new();
    if n >= 2 {
        let s2: Vec<f64> = s.iter().map(|v| v * v).collect();
        let names = ["|Y|^2", "max Y", "gap_1"];
        for (k, name) in names.iter().enumerate() {
            let stat: Vec<f64> = rows.iter().map(|r| r[k + 1]).collect();
            for (label, lhs) in [("S", &s), ("S^2", &s2)] {
                let c = correlation(lhs, &stat);
                correlations.push(CorrelationEntry {
                    statistic: format!("corr({label}, {name})"),
                    correlation: c,
                    z: c * (reps as f64).sqrt(),
                });
            }
        }
    }
    Ok(FactorizationReport {
        reps: reps as u64,
        var_s,
        var_s_target: 1.0 / model.rho(),
        ks,
        ks_threshold: dkw_threshold(reps, 0.01),
        correlations,
    })
}
