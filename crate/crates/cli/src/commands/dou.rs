use clap::{Args, Subcommand};
use loggas_core::dynamics::{couple, simulate, DouParams, Scheme, DEFAULT_DT_GUARD};
use loggas_core::ensemble::sample_spectrum;
use loggas_core::prob::replicate;
use loggas_core::stats::ls_slope;
use loggas_core::{Configuration, GasModel, Result as CoreResult, RngStream};
use serde_json::json;

use super::{finish, resolver, Common, ModelArgs};
use crate::config::Resolver;
use crate::error::{usage, CliError, CliResult};
use crate::output::{num, parse_reals, Format};

#[derive(Subcommand)]
pub enum DouCommand {
    /// Integrate the diffusion and record the paths.
    Simulate(SimulateArgs),
    /// Drive two solutions with the same noise and record their distance.
    Couple(CoupleArgs),
}

pub fn run(c: DouCommand) -> CliResult<()> {
    match c {
        DouCommand::Simulate(a) => run_simulate(a),
        DouCommand::Couple(a) => run_couple(a),
    }
}

#[derive(Args, Debug)]
pub struct PathArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Record every k-th step (the first and last states are always recorded).
    #[arg(long)]
    record_every: Option<u64>,
    /// `euler-reflected` or `euler-substep`.
    #[arg(long)]
    scheme: Option<String>,
    /// Largest allowed `dt * rho`.
    #[arg(long)]
    dt_guard: Option<f64>,
}

struct Resolved {
    params: DouParams,
    reps: usize,
    seed: u64,
    record_every: u64,
}

impl PathArgs {
    fn resolve(&self, r: &mut Resolver) -> CliResult<Resolved> {
        let model = self.model.resolve(r)?;
        let dt: f64 = r.get("dt", self.dt, 1e-3)?;
        let t_end: f64 = r.get("t-end", self.t_end, 1.0)?;
        let reps: usize = r.get("reps", self.reps, 1)?;
        let seed: u64 = r.get("seed", self.seed, 0)?;
        let record_every: u64 = r.get("record-every", self.record_every, 100)?;
        let scheme: String = r.get("scheme", self.scheme.clone(), "euler-substep".to_string())?;
        let guard: f64 = r.get("dt-guard", self.dt_guard, DEFAULT_DT_GUARD)?;
        let scheme: Scheme = scheme.parse().map_err(CliError::Usage)?;
        if reps == 0 || record_every == 0 {
            return usage("--reps and --record-every must be at least 1");
        }
        let params = DouParams::with_guard(model, dt, t_end, scheme, guard)?;
        Ok(Resolved {
            params,
            reps,
            seed,
            record_every,
        })
    }
}

/// Initial configuration: `equilibrium-sample`, `equispaced[a,b]` or `file:PATH`.
#[derive(Clone, Debug, PartialEq)]
enum StartSpec {
    Equilibrium,
    Fixed(Configuration),
}

impl StartSpec {
    fn parse(spec: &str, n: usize) -> CliResult<Self> {
        let spec = spec.trim();
        if spec == "equilibrium-sample" {
            return Ok(StartSpec::Equilibrium);
        }
        let points = if let Some(body) = spec.strip_prefix("equispaced[").and_then(|s| s.strip_suffix(']')) {
            let ends = parse_reals(body, "equispaced endpoints")?;
            let [a, b] = ends[..] else {
                return usage(format!("equispaced needs two endpoints, got {spec:?}"));
            };
            if n == 1 {
                vec![0.5 * (a + b)]
            } else {
                (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
            }
        } else if let Some(path) = spec.strip_prefix("file:") {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            parse_reals(&text, path)?
        } else {
            return usage(format!(
                "bad start {spec:?} (equilibrium-sample, equispaced[a,b], file:PATH)"
            ));
        };
        if points.len() != n {
            return usage(format!("start {spec:?} has {} coordinates, expected {n}", points.len()));
        }
        Ok(StartSpec::Fixed(Configuration::from_unsorted(points)?))
    }

    fn draw(&self, model: &GasModel, rng: &mut RngStream) -> CoreResult<Configuration> {
        match self {
            StartSpec::Equilibrium => sample_spectrum(model, rng),
            StartSpec::Fixed(x) => Ok(x.clone()),
        }
    }
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    path: PathArgs,
    /// Start: `equilibrium-sample` (default), `equispaced[a,b]` or `file:PATH`.
    #[arg(long)]
    x0: Option<String>,
    #[command(flatten)]
    common: Common,
}

fn run_simulate(a: SimulateArgs) -> CliResult<()> {
    let mut r = resolver(&a.common)?;
    let p = a.path.resolve(&mut r)?;
    let x0: String = r.get("x0", a.x0.clone(), "equilibrium-sample".to_string())?;
    let setup = finish(r, &a.common, "dou-simulate", Some(p.seed), Format::Csv)?;
    let model = *p.params.model();
    let start = StartSpec::parse(&x0, model.n())?;
    let root = RngStream::new(p.seed, 0);
    let paths = setup
        .pool
        .install(|| {
            replicate(&root, p.reps, |rng| {
                let x = start.draw(&model, &mut rng.fork(0))?;
                simulate(&p.params, x, &mut rng.fork(1), p.record_every)
            })
        })
        .into_iter()
        .collect::<CoreResult<Vec<_>>>()?;
    match setup.format {
        Format::Csv => {
            let mut header = vec!["rep".to_string(), "t".to_string()];
            header.extend((1..=model.n()).map(|i| format!("x{i}")));
            header.extend(["boundary_pushes", "interventions", "flagged"].map(String::from));
            let mut rows = Vec::new();
            for (k, path) in paths.iter().enumerate() {
                for s in path {
                    let mut row = vec![k.to_string(), num(s.t)];
                    row.extend(s.x.points().iter().map(|v| num(*v)));
                    row.extend([num(s.boundary_pushes), s.interventions.to_string(), s.flagged.to_string()]);
                    rows.push(row);
                }
            }
            setup.ctx.write_csv(&header, &rows)
        }
        Format::Json => {
            let paths: Vec<_> = paths
                .iter()
                .map(|path| {
                    json!({
                        "t": path.iter().map(|s| s.t).collect::<Vec<_>>(),
                        "x": path.iter().map(|s| s.x.points().to_vec()).collect::<Vec<_>>(),
                        "boundary_pushes": path.last().map(|s| s.boundary_pushes),
                        "interventions": path.last().map(|s| s.interventions),
                        "flagged": path.last().map(|s| s.flagged),
                        "steps": path.last().map(|s| s.steps),
                    })
                })
                .collect();
            setup.ctx.write_json(json!({ "n": model.n(), "paths": paths }))
        }
    }
}

#[derive(Args, Debug)]
pub struct CoupleArgs {
    #[command(flatten)]
    path: PathArgs,
    /// First start (default `equilibrium-sample`).
    #[arg(long)]
    x0: Option<String>,
    /// Second start (default `equispaced[-2,2]`).
    #[arg(long)]
    y0: Option<String>,
    /// A path contracts when its log-distance slope is at most `-rho (1 - slope_tol)`.
    #[arg(long)]
    slope_tol: Option<f64>,
    #[command(flatten)]
    common: Common,
}

fn run_couple(a: CoupleArgs) -> CliResult<()> {
    let mut r = resolver(&a.common)?;
    let p = a.path.resolve(&mut r)?;
    let x0: String = r.get("x0", a.x0.clone(), "equilibrium-sample".to_string())?;
    let y0: String = r.get("y0", a.y0.clone(), "equispaced[-2,2]".to_string())?;
    let slope_tol: f64 = r.get("slope-tol", a.slope_tol, 0.05)?;
    let setup = finish(r, &a.common, "dou-couple", Some(p.seed), Format::Csv)?;
    let model = *p.params.model();
    let (sx, sy) = (StartSpec::parse(&x0, model.n())?, StartSpec::parse(&y0, model.n())?);
    let root = RngStream::new(p.seed, 0);
    let paths = setup
        .pool
        .install(|| {
            replicate(&root, p.reps, |rng| {
                let x = sx.draw(&model, &mut rng.fork(0))?;
                let y = sy.draw(&model, &mut rng.fork(1))?;
                couple(&p.params, x, y, &mut rng.fork(2), p.record_every)
            })
        })
        .into_iter()
        .collect::<CoreResult<Vec<_>>>()?;
    let times: Vec<f64> = paths[0].iter().map(|c| c.t).collect();
    let reps = paths.len() as f64;
    let moment = |k: usize, q: f64| paths.iter().map(|path| path[k].distance.powf(q)).sum::<f64>() / reps;
    let mean: Vec<f64> = (0..times.len()).map(|k| moment(k, 1.0)).collect();
    let w2: Vec<f64> = (0..times.len()).map(|k| moment(k, 2.0).sqrt()).collect();
    let slopes: Vec<Option<f64>> = paths.iter().map(|path| log_slope(path.iter().map(|c| (c.t, c.distance)))).collect();
    let threshold = -model.rho() * (1.0 - slope_tol);
    let contracting = slopes.iter().filter(|s| s.is_some_and(|s| s <= threshold)).count();
    match setup.format {
        Format::Csv => {
            let header = vec!["t".to_string(), "distance".to_string()];
            let rows: Vec<Vec<String>> = times.iter().zip(&mean).map(|(t, d)| vec![num(*t), num(*d)]).collect();
            setup.ctx.write_csv(&header, &rows)
        }
        Format::Json => setup.ctx.write_json(json!({
            "times": times,
            "mean_distance": mean,
            "w1_bound": mean,
            "w2_bound": w2,
            "mean_distance_rate": log_slope(times.iter().copied().zip(mean.iter().copied())).map(|s| -s),
            "rho": model.rho(),
            "slope_threshold": threshold,
            "path_slopes": slopes,
            "fraction_contracting": contracting as f64 / reps,
        })),
    }
}

/// Least-squares slope of `log d` against `t` over the points with `d > 0`.
fn log_slope(points: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let (t, l): (Vec<f64>, Vec<f64>) = points.filter(|(_, d)| *d > 0.0).map(|(t, d)| (t, d.ln())).unzip();
    ls_slope(&t, &l)
}
