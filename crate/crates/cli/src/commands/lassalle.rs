use clap::Args;
use loggas_core::symfun::{hermite_lassalle, parse_rational, Coeff, GeneratorParams, LassalleEntry};
use serde_json::{json, Map, Value};

use super::{finish, resolver, Common};
use crate::error::{usage, CliResult};
use crate::output::Format;

/// Largest weight computed with `beta` kept symbolic.
const SYMBOLIC_MAX_DEGREE: u32 = 4;

#[derive(Args, Debug)]
pub struct LassalleArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Exact rational beta such as `2` or `1/2`; symbolic in `b` when absent.
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    max_degree: Option<u32>,
    /// Shorthand for `--out PATH --format json`.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["out", "format"])]
    json_out: Option<String>,
    #[command(flatten)]
    common: Common,
}

fn entries_json<C: Coeff>(entries: &[LassalleEntry<C>]) -> Vec<Value> {
    entries
        .iter()
        .map(|e| {
            let coefficients: Map<String, Value> = e
                .polynomial
                .terms()
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .map(|(p, c)| (p.to_string(), Value::String(c.to_string())))
                .collect();
            json!({
                "partition": e.partition.to_string(),
                "weight": e.partition.weight(),
                "eigenvalue": e.eigenvalue.to_string(),
                "coefficients": coefficients,
            })
        })
        .collect()
}

fn csv_rows<C: Coeff>(entries: &[LassalleEntry<C>]) -> Vec<Vec<String>> {
    entries
        .iter()
        .flat_map(|e| {
            e.polynomial.terms().collect::<Vec<_>>().into_iter().rev().map(move |(p, c)| {
                vec![
                    e.partition.to_string(),
                    e.eigenvalue.to_string(),
                    p.to_string(),
                    c.to_string(),
                ]
            })
        })
        .collect()
}

pub fn run(mut a: LassalleArgs) -> CliResult<()> {
    if let Some(path) = a.json_out.take() {
        a.common.out = Some(path);
        a.common.format = Some(Format::Json);
    }
    let mut r = resolver(&a.common)?;
    let n: usize = r.require("n", a.n)?;
    let beta: Option<String> = r.get_opt("beta", a.beta.clone())?;
    let max_degree: u32 = r.get("max-degree", a.max_degree, 2)?;
    let setup = finish(r, &a.common, "lassalle", None, Format::Json)?;
    let (polys, rows) = match &beta {
        Some(s) => {
            let Some(b) = parse_rational(s) else {
                return usage(format!("--beta {s:?} is not an exact rational"));
            };
            let entries = hermite_lassalle(&GeneratorParams::rational(n, b)?, max_degree)?;
            (entries_json(&entries), csv_rows(&entries))
        }
        None => {
            if max_degree > SYMBOLIC_MAX_DEGREE {
                return usage(format!(
                    "symbolic beta supports --max-degree up to {SYMBOLIC_MAX_DEGREE}; pass an exact --beta for more"
                ));
            }
            let entries = hermite_lassalle(&GeneratorParams::symbolic(n)?, max_degree)?;
            (entries_json(&entries), csv_rows(&entries))
        }
    };
    match setup.format {
        Format::Json => setup.ctx.write_json(json!({
            "n": n,
            "beta": beta.unwrap_or_else(|| "b".to_string()),
            "rho": n,
            "polynomials": polys,
        })),
        Format::Csv => {
            let header = ["partition", "eigenvalue", "term", "coefficient"].map(String::from).to_vec();
            setup.ctx.write_csv(&header, &rows)
        }
    }
}
