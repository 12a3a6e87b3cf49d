use clap::Args;
use loggas_core::ensemble::{eigenvalues_dense, sample_goe_dense, sample_gue_dense, sample_spectrum};
use loggas_core::prob::replicate;
use loggas_core::{Result as CoreResult, RngStream};
use serde_json::json;

use super::{finish, resolver, Common, ModelArgs};
use crate::error::{usage, CliResult};
use crate::output::{num, Format};

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of spectra.
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// `tridiagonal` (any beta), `gue-dense` (beta = 2) or `goe-dense` (beta = 1).
    #[arg(long)]
    method: Option<String>,
    #[command(flatten)]
    common: Common,
}

pub fn run(a: SampleArgs) -> CliResult<()> {
    let mut r = resolver(&a.common)?;
    let model = a.model.resolve(&mut r)?;
    let reps: usize = r.get("reps", a.reps, 1)?;
    let seed: u64 = r.get("seed", a.seed, 0)?;
    let method: String = r.get("method", a.method.clone(), "tridiagonal".to_string())?;
    let setup = finish(r, &a.common, "sample", Some(seed), Format::Csv)?;
    if reps == 0 {
        return usage("--reps must be at least 1");
    }
    let n = model.n();
    let scale = (n as f64 / model.rho()).sqrt();
    let draw: Box<dyn Fn(&mut RngStream) -> CoreResult<Vec<f64>> + Sync> = match method.as_str() {
        "tridiagonal" => Box::new(move |rng| sample_spectrum(&model, rng).map(|x| x.into_points())),
        "gue-dense" | "goe-dense" => {
            let (want, gue) = if method == "gue-dense" { (2.0, true) } else { (1.0, false) };
            if model.beta() != want {
                return usage(format!("--method {method} requires beta = {want}"));
            }
            Box::new(move |rng| {
                let h = if gue { sample_gue_dense(n, rng)? } else { sample_goe_dense(n, rng)? };
                let x = eigenvalues_dense(&h, f64::EPSILON)?;
                Ok(x.points().iter().map(|v| v * scale).collect())
            })
        }
        _ => return usage(format!("unknown method {method:?} (tridiagonal, gue-dense, goe-dense)")),
    };
    let root = RngStream::new(seed, 0);
    let spectra = setup
        .pool
        .install(|| replicate(&root, reps, |rng| draw(rng)))
        .into_iter()
        .collect::<CoreResult<Vec<_>>>()?;
    match setup.format {
        Format::Csv => {
            let mut header = vec!["rep".to_string()];
            header.extend((1..=n).map(|i| format!("x{i}")));
            let rows: Vec<Vec<String>> = spectra
                .iter()
                .enumerate()
                .map(|(k, x)| std::iter::once(k.to_string()).chain(x.iter().map(|v| num(*v))).collect())
                .collect();
            setup.ctx.write_csv(&header, &rows)
        }
        Format::Json => setup.ctx.write_json(json!({ "n": n, "samples": spectra })),
    }
}
