use clap::{Args, Subcommand};
use loggas_core::inequalities::{
    concentration_tails, factorization_check, herbst_laplace_check, lsi_check, poincare_check, Verdict,
};
use loggas_core::{GasModel, RngStream};
use serde_json::{json, Value};

use super::{finish, resolver, Common, ModelArgs, Setup};
use crate::config::Resolver;
use crate::error::{usage, CliError, CliResult};
use crate::fnspec::parse_fn;
use crate::output::{num, parse_reals, Format};

#[derive(Subcommand)]
pub enum VerifyCommand {
    /// Variance against the Dirichlet form over rho.
    Poincare(FnArgs),
    /// Entropy of f^2 against twice the Dirichlet form over rho.
    Lsi(FnArgs),
    /// Centered log-Laplace transform against its Gaussian bound.
    Herbst(HerbstArgs),
    /// Empirical deviation probabilities against the concentration bound.
    Tails(TailsArgs),
    /// Trace law and independence of the trace from the centered spectrum.
    Factorization(BaseArgs),
}

#[derive(Args, Debug)]
pub struct BaseArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
pub struct FnArgs {
    #[command(flatten)]
    base: BaseArgs,
    /// Test function, e.g. `linear:1,1,1,1`, `max`, `explin:0.3`,
    /// `linstat:stieltjes_im:0.0:1.0`, `poly:FILE`.
    #[arg(long = "fn")]
    function: Option<String>,
}

#[derive(Args, Debug)]
pub struct HerbstArgs {
    #[command(flatten)]
    f: FnArgs,
    /// Comma-separated lambdas (default 0.5,1,2).
    #[arg(long)]
    lambdas: Option<String>,
}

#[derive(Args, Debug)]
pub struct TailsArgs {
    #[command(flatten)]
    f: FnArgs,
    /// Comma-separated deviations r, or `auto` for eight points up to the
    /// largest r the sample size resolves.
    #[arg(long)]
    r_grid: Option<String>,
}

const DEFAULT_REPS: usize = 100_000;

struct Base {
    model: GasModel,
    reps: usize,
    seed: u64,
}

fn base(a: &BaseArgs, r: &mut Resolver) -> CliResult<Base> {
    Ok(Base {
        model: a.model.resolve(r)?,
        reps: r.get("reps", a.reps, DEFAULT_REPS)?,
        seed: r.get("seed", a.seed, 0)?,
    })
}

pub fn run(c: VerifyCommand) -> CliResult<()> {
    match c {
        VerifyCommand::Poincare(a) => run_deficit(a, "poincare"),
        VerifyCommand::Lsi(a) => run_deficit(a, "lsi"),
        VerifyCommand::Herbst(a) => run_herbst(a),
        VerifyCommand::Tails(a) => run_tails(a),
        VerifyCommand::Factorization(a) => run_factorization(a),
    }
}

fn json_only(setup: &Setup, what: &str) -> CliResult<()> {
    if setup.format != Format::Json {
        return usage(format!("verify {what} writes JSON only"));
    }
    Ok(())
}

fn violation(what: &str) -> CliError {
    CliError::Violation(format!("verify {what}: check failed, see report"))
}

fn run_deficit(a: FnArgs, what: &str) -> CliResult<()> {
    let mut r = resolver(&a.base.common)?;
    let b = base(&a.base, &mut r)?;
    let spec: String = r.require("fn", a.function.clone())?;
    let setup = finish(r, &a.base.common, &format!("verify-{what}"), Some(b.seed), Format::Json)?;
    json_only(&setup, what)?;
    let f = parse_fn(&spec, b.model.n(), b.model.beta())?;
    let rng = RngStream::new(b.seed, 0);
    let report = setup.pool.install(|| match what {
        "poincare" => poincare_check(&b.model, &f, b.reps, &rng),
        _ => lsi_check(&b.model, &f, b.reps, &rng),
    })?;
    setup.ctx.write_json(json!({ "fn": spec, "report": report }))?;
    if report.verdict == Verdict::Violation {
        return Err(violation(what));
    }
    Ok(())
}

fn run_herbst(a: HerbstArgs) -> CliResult<()> {
    let mut r = resolver(&a.f.base.common)?;
    let b = base(&a.f.base, &mut r)?;
    let spec: String = r.require("fn", a.f.function.clone())?;
    let lambdas: String = r.get("lambdas", a.lambdas.clone(), "0.5,1,2".to_string())?;
    let setup = finish(r, &a.f.base.common, "verify-herbst", Some(b.seed), Format::Json)?;
    let lambdas = parse_reals(&lambdas, "--lambdas")?;
    let f = parse_fn(&spec, b.model.n(), b.model.beta())?;
    let rng = RngStream::new(b.seed, 0);
    let report = setup
        .pool
        .install(|| herbst_laplace_check(&b.model, &f, &lambdas, b.reps, &rng))?;
    match setup.format {
        Format::Json => setup.ctx.write_json(json!({ "fn": spec, "holds": report.holds(), "report": report }))?,
        Format::Csv => {
            let header = ["lambda", "log_laplace", "bound"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|row| vec![num(row.lambda), num(row.log_laplace), num(row.bound)])
                .collect();
            setup.ctx.write_csv(&header, &rows)?
        }
    }
    if !report.holds() {
        return Err(violation("herbst"));
    }
    Ok(())
}

/// Eight equally spaced deviations up to the `r` where the bound times `reps` is 20.
fn auto_grid(model: &GasModel, lip: f64, reps: usize) -> CliResult<Vec<f64>> {
    let ratio = reps as f64 / 10.0;
    if ratio <= 1.0 {
        return usage("--reps too small for an automatic r grid");
    }
    let r_max = lip * (2.0 * ratio.ln() / model.rho()).sqrt();
    Ok((1..=8).map(|k| r_max * k as f64 / 8.0).collect())
}

fn run_tails(a: TailsArgs) -> CliResult<()> {
    let mut r = resolver(&a.f.base.common)?;
    let b = base(&a.f.base, &mut r)?;
    let spec: String = r.require("fn", a.f.function.clone())?;
    let grid: String = r.get("r-grid", a.r_grid.clone(), "auto".to_string())?;
    let setup = finish(r, &a.f.base.common, "verify-tails", Some(b.seed), Format::Json)?;
    let f = parse_fn(&spec, b.model.n(), b.model.beta())?;
    let grid = if grid.trim() == "auto" {
        let Some(lip) = f.lip(b.model.n()) else {
            return usage(format!("{spec} has no global Lipschitz constant"));
        };
        auto_grid(&b.model, lip, b.reps)?
    } else {
        parse_reals(&grid, "--r-grid")?
    };
    let rng = RngStream::new(b.seed, 0);
    let report = setup
        .pool
        .install(|| concentration_tails(&b.model, &f, &grid, b.reps, &rng))?;
    match setup.format {
        Format::Json => setup.ctx.write_json(json!({ "fn": spec, "holds": report.holds(), "report": report }))?,
        Format::Csv => {
            let header = ["r", "empirical"].map(String::from).to_vec();
            let rows: Vec<Vec<String>> = report.rows.iter().map(|row| vec![num(row.r), num(row.empirical)]).collect();
            setup.ctx.write_csv(&header, &rows)?
        }
    }
    if !report.holds() {
        return Err(violation("tails"));
    }
    Ok(())
}

fn run_factorization(a: BaseArgs) -> CliResult<()> {
    let mut r = resolver(&a.common)?;
    let b = base(&a, &mut r)?;
    let setup = finish(r, &a.common, "verify-factorization", Some(b.seed), Format::Json)?;
    json_only(&setup, "factorization")?;
    let rng = RngStream::new(b.seed, 0);
    let report = setup.pool.install(|| factorization_check(&b.model, b.reps, &rng))?;
    let body: Value = json!({ "passed": report.passed(), "report": report });
    setup.ctx.write_json(body)?;
    if !report.passed() {
        return Err(violation("factorization"));
    }
    Ok(())
}
