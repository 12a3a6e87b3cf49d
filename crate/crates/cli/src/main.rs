mod commands;
mod config;
mod error;
mod fnspec;
mod output;

use std::process::ExitCode;

use clap::Parser;

use commands::Command;

#[derive(Parser)]
#[command(name = "loggas", version, about = "Log-gas / beta Hermite ensemble toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("loggas: {e}");
            e.exit_code()
        }
    }
}
