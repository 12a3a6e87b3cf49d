use clap::Args;
use loggas_core::analysis::{ks_distance, wasserstein_to_semicircle, EmpiricalMeasure, SemicircleLaw};
use serde::Serialize;
use serde_json::json;

use super::{finish, resolver, Common};
use crate::error::{usage, CliError, CliResult};
use crate::output::{num, Format};

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// CSV of spectra with columns `x1, x2, ...` (as written by `sample`).
    #[arg(long = "in")]
    input: Option<String>,
    /// Parameter of the semicircle law to compare with.
    #[arg(long)]
    beta: Option<f64>,
    /// Quadrature grid for the Wasserstein distance (at least 1000).
    #[arg(long)]
    grid: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Serialize)]
struct SpectrumStats {
    atoms: usize,
    mean: f64,
    second_moment: f64,
    min: f64,
    max: f64,
    ks_semicircle: f64,
    w1_semicircle: f64,
    w2_semicircle: f64,
}

fn stats_of(atoms: Vec<f64>, law: &SemicircleLaw, grid: usize) -> CliResult<SpectrumStats> {
    let m = EmpiricalMeasure::new(atoms)?;
    Ok(SpectrumStats {
        atoms: m.len(),
        mean: m.moment(1),
        second_moment: m.moment(2),
        min: m.min(),
        max: m.max(),
        ks_semicircle: ks_distance(&m, |x| law.cdf(x)),
        w1_semicircle: wasserstein_to_semicircle(1, &m, law, grid)?,
        w2_semicircle: wasserstein_to_semicircle(2, &m, law, grid)?,
    })
}

pub fn read_spectra(path: &str) -> CliResult<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
    let headers = reader.headers().map_err(|e| CliError::Usage(format!("{path}: {e}")))?.clone();
    let cols: Vec<usize> = headers
        .iter()
        .enumerate()
        .filter(|(_, h)| h.len() > 1 && h.starts_with('x') && h[1..].chars().all(|c| c.is_ascii_digit()))
        .map(|(i, _)| i)
        .collect();
    if cols.is_empty() {
        return usage(format!("{path}: no columns named x1, x2, ..."));
    }
    let mut out = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
        let row = cols
            .iter()
            .map(|&c| {
                rec.get(c)
                    .and_then(|s| s.trim().parse::<f64>().ok())
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::Usage(format!("{path}: record {}: bad value in column {}", line + 1, c + 1)))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        out.push(row);
    }
    if out.is_empty() {
        return usage(format!("{path}: no spectra"));
    }
    Ok(out)
}

pub fn run(a: StatsArgs) -> CliResult<()> {
    let mut r = resolver(&a.common)?;
    let input: String = r.require("in", a.input.clone())?;
    let beta: f64 = r.require("beta", a.beta)?;
    let grid: usize = r.get("grid", a.grid, 10_000)?;
    let setup = finish(r, &a.common, "spectrum-stats", None, Format::Json)?;
    let law = SemicircleLaw::new(beta)?;
    let spectra = read_spectra(&input)?;
    let per: Vec<SpectrumStats> = spectra
        .iter()
        .map(|x| stats_of(x.clone(), &law, grid))
        .collect::<CliResult<_>>()?;
    match setup.format {
        Format::Json => {
            let pooled = stats_of(spectra.concat(), &law, grid)?;
            setup.ctx.write_json(json!({
                "beta": beta,
                "edge": law.edge(),
                "spectra": per,
                "pooled": pooled,
            }))
        }
        Format::Csv => {
            let header: Vec<String> = [
                "spectrum", "atoms", "mean", "second_moment", "min", "max", "ks_semicircle", "w1_semicircle",
                "w2_semicircle",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            let rows: Vec<Vec<String>> = per
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    vec![
                        k.to_string(),
                        s.atoms.to_string(),
                        num(s.mean),
                        num(s.second_moment),
                        num(s.min),
                        num(s.max),
                        num(s.ks_semicircle),
                        num(s.w1_semicircle),
                        num(s.w2_semicircle),
                    ]
                })
                .collect();
            setup.ctx.write_csv(&header, &rows)
        }
    }
}

