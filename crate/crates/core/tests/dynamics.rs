use loggas_core::analysis::{ks_distance, EmpiricalMeasure};
use loggas_core::dynamics::{couple, simulate, wasserstein_decay_experiment, DouParams, Scheme};
use loggas_core::ensemble::{sample_spectrum, GasModel};
use loggas_core::inequalities::dkw_threshold;
use loggas_core::prob::{replicate, McEstimate};
use loggas_core::stats::normal_cdf;
use loggas_core::{Configuration, RngStream};

fn equispaced(n: usize, a: f64) -> Configuration {
    Configuration::from_unsorted((0..n).map(|i| -a + 2.0 * a * i as f64 / (n - 1) as f64).collect()).unwrap()
}

#[test]
fn recorded_states_stay_ordered() {
    for beta in [0.5, 1.0, 2.0, 4.0] {
        for scheme in [Scheme::EulerReflected, Scheme::EulerSubstep] {
            let model = GasModel::hermite(5, beta).unwrap();
            let p = DouParams::new(model, 0.02, 2.0, scheme).unwrap();
            let paths = replicate(&RngStream::new(40, 0), 20, |r| {
                simulate(&p, equispaced(5, 0.5), r, 1).unwrap()
            });
            for path in &paths {
                assert_eq!(path.len() as u64, p.n_steps() + 1);
                for s in path {
                    assert!(s.x.points().windows(2).all(|w| w[0] >= w[1]), "{beta} {scheme:?}: {:?}", s.x);
                    assert!(s.x.points().iter().all(|v| v.is_finite()));
                }
            }
        }
    }
}

#[test]
fn equilibrium_is_stationary() {
    // n = 4, beta = 2, rho = 4: E|x|^2 = (n / rho)(1 + beta (n - 1) / 2) = 4.
    let model = GasModel::new(4, 2.0, 4.0).unwrap();
    let p = DouParams::new(model, 1e-3, 1.0, Scheme::EulerSubstep).unwrap();
    let finals = replicate(&RngStream::new(41, 0), 2000, |r| {
        let x0 = sample_spectrum(&model, &mut r.fork(0)).unwrap();
        let path = simulate(&p, x0, &mut r.fork(1), u64::MAX).unwrap();
        path.last().unwrap().x.norm_sq()
    });
    let e = McEstimate::from_samples(finals);
    // Four standard errors plus an O(dt) discretization allowance.
    assert!((e.mean - 4.0).abs() <= 4.0 * e.std_error + 0.04, "{e:?}");
}

#[test]
fn relaxes_from_a_spread_start() {
    let model = GasModel::new(4, 2.0, 4.0).unwrap();
    let burn = DouParams::new(model, 1e-3, 1.0, Scheme::EulerSubstep).unwrap().default_burn_in();
    assert_eq!(burn, 2.5);
    let p = DouParams::new(model, 1e-3, burn, Scheme::EulerSubstep).unwrap();
    let finals = replicate(&RngStream::new(42, 0), 1000, |r| {
        let path = simulate(&p, equispaced(4, 3.0), r, u64::MAX).unwrap();
        path.last().unwrap().x.norm_sq()
    });
    let e = McEstimate::from_samples(finals);
    assert!((e.mean - 4.0).abs() <= 4.0 * e.std_error + 0.04, "{e:?}");
}

#[test]
fn trace_follows_its_autoregression() {
    // The sum of coordinates ignores both the repulsion and the sorting, so
    // under the reflected scheme it is exactly S_{k+1} = a S_k + sqrt(2 n dt) Z
    // with a = 1 - rho dt.
    let (n, rho, dt, steps) = (4usize, 4.0, 2e-3, 250u64);
    let model = GasModel::new(n, 2.0, rho).unwrap();
    let p = DouParams::new(model, dt, dt * steps as f64, Scheme::EulerReflected).unwrap();
    let x0 = Configuration::from_unsorted(equispaced(n, 1.5).points().iter().map(|v| v + 0.25).collect()).unwrap();
    let s0 = x0.sum();
    let a: f64 = 1.0 - rho * dt;
    let k = p.n_steps() as i32;
    let mean = s0 * a.powi(k);
    let var = 2.0 * n as f64 * dt * (1.0 - a.powi(2 * k)) / (1.0 - a * a);
    let reps = 20_000;
    let z = replicate(&RngStream::new(43, 0), reps, |r| {
        let path = simulate(&p, x0.clone(), r, u64::MAX).unwrap();
        (path.last().unwrap().x.sum() - mean) / var.sqrt()
    });
    let ks = ks_distance(&EmpiricalMeasure::new(z).unwrap(), normal_cdf);
    assert!(ks < dkw_threshold(reps, 0.01), "{ks}");
}

/// Worst excess over the contraction rate along one coupled path,
/// `max_t (log(d_t / d_0) + rho t) / t`.
fn excess_rates(dt: f64, paths: usize) -> Vec<f64> {
    let model = GasModel::new(4, 2.0, 4.0).unwrap();
    let rho = model.rho();
    let p = DouParams::new(model, dt, 2.0, Scheme::EulerSubstep).unwrap();
    let mut rates = replicate(&RngStream::new(44, 0), paths, |r| {
        let x0 = sample_spectrum(&model, &mut r.fork(0)).unwrap();
        let y0 = sample_spectrum(&model, &mut r.fork(1)).unwrap();
        let path = couple(&p, x0, y0, &mut r.fork(2), 1).unwrap();
        let d0 = path[0].distance;
        path[1..]
            .iter()
            .map(|c| ((c.distance / d0).ln() + rho * c.t) / c.t)
            .fold(f64::NEG_INFINITY, f64::max)
    });
    rates.sort_by(f64::total_cmp);
    rates
}

#[test]
fn coupled_paths_contract_pathwise() {
    // An explicit step can expand the distance when two particles come
    // closer than about sqrt(beta dt), so the bound holds path by path only
    // for most paths, and the exceptions thin out as dt shrinks.
    let coarse = excess_rates(1e-3, 500);
    let fine = excess_rates(5e-4, 500);
    let violating = |r: &[f64]| r.iter().filter(|&&v| v > 0.0).count();
    assert!(violating(&coarse) <= 50, "{}", violating(&coarse));
    assert!(violating(&fine) <= violating(&coarse), "{} {}", violating(&fine), violating(&coarse));
    for (dt, r) in [(1e-3, &coarse), (5e-4, &fine)] {
        let p99 = r[r.len() * 99 / 100];
        assert!(p99 <= 5000.0 * dt, "dt {dt}: p99 excess {p99}");
        assert!(r[r.len() * 9 / 10] < 0.0);
    }
}

#[test]
fn wasserstein_bound_decays_at_rate_rho() {
    let model = GasModel::new(4, 2.0, 4.0).unwrap();
    let p = DouParams::new(model, 1e-3, 2.0, Scheme::EulerSubstep).unwrap();
    let start = equispaced(4, 2.0);
    for order in [1, 2] {
        let table = wasserstein_decay_experiment(
            &p,
            |r| sample_spectrum(&model, r),
            |_| Ok(start.clone()),
            order,
            300,
            &RngStream::new(45, 0),
            100,
        )
        .unwrap();
        assert_eq!(table.times.len(), 21);
        // The mean over paths is not monotone: one near collision can bump it.
        let (first, last) = (table.bounds[0], *table.bounds.last().unwrap());
        assert!(last < first * (-6.0f64).exp(), "W{order}: {first} -> {last}");
        let rate = table.rate.unwrap();
        assert!(rate >= 0.95 * model.rho(), "W{order}: rate {rate}");
    }
    let same = wasserstein_decay_experiment(
        &p,
        |r| sample_spectrum(&model, r),
        |r| sample_spectrum(&model, r),
        2,
        10,
        &RngStream::new(46, 0),
        100,
    )
    .unwrap();
    assert!(same.bounds.iter().all(|b| *b == 0.0));
    assert_eq!(same.rate, None);
}

fn mean_interventions(beta: f64, dt: f64, paths: usize) -> f64 {
    let model = GasModel::new(4, beta, 4.0).unwrap();
    let p = DouParams::new(model, dt, 5.0, Scheme::EulerReflected).unwrap();
    let counts = replicate(&RngStream::new(47, 0), paths, |r| {
        let x0 = sample_spectrum(&model, &mut r.fork(0)).unwrap();
        let path = simulate(&p, x0, &mut r.fork(1), u64::MAX).unwrap();
        path.last().unwrap().interventions as f64
    });
    counts.iter().sum::<f64>() / paths as f64
}

#[test]
fn interventions_vanish_with_dt() {
    // For beta = 4 the intervention rate falls faster than dt.
    let coarse = mean_interventions(4.0, 0.024, 400);
    let mid = mean_interventions(4.0, 0.012, 400);
    let fine = mean_interventions(4.0, 0.006, 400);
    assert!(coarse > 0.5, "{coarse}");
    assert!(mid <= 0.5 * coarse && fine <= 0.5 * mid, "{coarse} {mid} {fine}");
    // For beta = 2 it still decreases, only like sqrt(dt).
    let a = mean_interventions(2.0, 4e-3, 200);
    let b = mean_interventions(2.0, 2e-3, 200);
    let c = mean_interventions(2.0, 1e-3, 200);
    assert!(b < 0.9 * a && c < 0.9 * b, "{a} {b} {c}");
}

#[test]
fn substep_scheme_keeps_pushes_small() {
    let model = GasModel::new(4, 2.0, 4.0).unwrap();
    let run = |scheme| {
        let p = DouParams::new(model, 4e-3, 5.0, scheme).unwrap();
        let pushes = replicate(&RngStream::new(48, 0), 100, |r| {
            let x0 = sample_spectrum(&model, &mut r.fork(0)).unwrap();
            simulate(&p, x0, &mut r.fork(1), u64::MAX).unwrap().last().unwrap().boundary_pushes
        });
        pushes.iter().sum::<f64>()
    };
    assert!(run(Scheme::EulerSubstep) <= run(Scheme::EulerReflected));
}

#[test]
fn invalid_parameters() {
    let model = GasModel::new(3, 2.0, 3.0).unwrap();
    let p = DouParams::new(model, 1e-3, 0.01, Scheme::EulerSubstep).unwrap();
    let mut rng = RngStream::new(0, 0);
    assert!(simulate(&p, equispaced(4, 1.0), &mut rng, 1).is_err());
    assert!(simulate(&p, equispaced(3, 1.0), &mut rng, 0).is_err());
    assert!(couple(&p, equispaced(3, 1.0), equispaced(2, 1.0), &mut rng, 1).is_err());
    assert!(DouParams::new(model, 0.05, 1.0, Scheme::EulerSubstep).is_err());
    assert!(DouParams::with_guard(model, 0.05, 1.0, Scheme::EulerSubstep, 0.5).is_ok());
}
