mod dou;
mod lassalle;
mod sample;
mod stats;
mod verify;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Subcommand};
use loggas_core::GasModel;

use crate::config::{ConfigFile, Resolver};
use crate::error::{CliError, CliResult};
use crate::output::{Format, RunContext};

#[derive(Subcommand)]
pub enum Command {
    /// Draw spectra from the ensemble.
    Sample(sample::SampleArgs),
    /// Moments, semicircle distances and extremes of spectra read from CSV.
    SpectrumStats(stats::StatsArgs),
    /// Dyson–Ornstein–Uhlenbeck dynamics.
    #[command(subcommand)]
    Dou(dou::DouCommand),
    /// Monte Carlo checks of functional inequalities.
    #[command(subcommand)]
    Verify(verify::VerifyCommand),
    /// Polynomial eigenfunctions of the generator, exactly.
    Lassalle(lassalle::LassalleArgs),
}

pub fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Sample(a) => sample::run(a),
        Command::SpectrumStats(a) => stats::run(a),
        Command::Dou(c) => dou::run(c),
        Command::Verify(c) => verify::run(c),
        Command::Lassalle(a) => lassalle::run(a),
    }
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct Common {
    /// `key = value` file; flags take precedence over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (default: standard output), or `json`/`csv` to pick the
    /// format and write to standard output. A manifest is written next to files.
    #[arg(long)]
    pub out: Option<String>,
    /// Explicit manifest path.
    #[arg(long)]
    pub manifest: Option<String>,
    /// Output format, `csv` or `json`.
    #[arg(long, alias = "report")]
    pub format: Option<Format>,
    /// Worker threads for replica parallelism (results do not depend on it).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// `--n --beta --rho`.
#[derive(Args, Clone, Debug, Default)]
pub struct ModelArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Confinement strength (default n).
    #[arg(long)]
    pub rho: Option<f64>,
}

impl ModelArgs {
    pub fn resolve(&self, r: &mut Resolver) -> CliResult<GasModel> {
        let n: usize = r.require("n", self.n)?;
        let beta: f64 = r.require("beta", self.beta)?;
        let rho: f64 = r.get("rho", self.rho, n as f64)?;
        Ok(GasModel::new(n, beta, rho)?)
    }
}

pub fn resolver(common: &Common) -> CliResult<Resolver> {
    let file = match &common.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    Ok(Resolver::new(file))
}

pub struct Setup {
    pub ctx: RunContext,
    pub format: Format,
    pub pool: rayon::ThreadPool,
}

/// Resolves the shared options, rejects unknown config keys and builds the
/// worker pool.
pub fn finish(
    mut r: Resolver,
    common: &Common,
    subcommand: &str,
    seed: Option<u64>,
    default_format: Format,
) -> CliResult<Setup> {
    let mut out: Option<String> = r.get_opt("out", common.out.clone())?;
    // `--out json` / `--out csv` name a format, not a file.
    let out_format = out.as_deref().and_then(|o| o.parse::<Format>().ok());
    if out_format.is_some() {
        out = None;
    }
    let format = r.get("format", common.format.or(out_format), default_format)?;
    let default_threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let threads: usize = r.get("threads", common.threads, default_threads)?;
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    let manifest: Option<String> = r.get_opt("manifest", common.manifest.clone())?;
    let params = r.finish()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    Ok(Setup {
        ctx: RunContext {
            subcommand: subcommand.to_string(),
            params,
            seed,
            threads,
            out: out.map(PathBuf::from),
            manifest: manifest.map(PathBuf::from),
            started: Instant::now(),
        },
        format,
        pool,
    })
}
