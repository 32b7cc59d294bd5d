//! Command-line surface for the secret-sharing simulator: parameter sweeps
//! to CSV, the brute-force verification suite, and seeded Monte Carlo runs.
//!
//! Exit codes follow the CI-gate contract: 0 when everything passes, 1 when
//! a verification check fails, 2 for usage and I/O errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod format;
mod run;
mod sweep;
mod verify;

#[derive(Parser)]
#[command(
    name = "qss",
    version,
    about = "Cloning-mediated quantum secret sharing: sweeps, checks, trials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate entanglement and readout quantities over a parameter grid.
    Sweep(sweep::SweepArgs),
    /// Check every closed form against its brute-force oracle.
    Verify(verify::VerifyArgs),
    /// Run seeded Monte Carlo protocol rounds and report rates.
    Run(run::RunArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => sweep::execute(&args),
        Command::Verify(args) => verify::execute(&args),
        Command::Run(args) => run::execute(&args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
