//! `cfsk`: Gram matrices, discrimination sweeps, rates and figure data for
//! coherent-state keying alphabets.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 configuration error, 3 numerical
//! failure, 4 negative Fourier coefficient (no dCFSK at those parameters).

mod commands;
mod config;
mod error;
mod figures;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{DiscriminateArgs, GramArgs, OptimizeArgs};
use crate::config::SweepArgs;
use crate::error::CliResult;
use crate::figures::FigureArgs;

#[derive(Debug, Parser)]
#[command(
    name = "cfsk",
    version,
    about = "Coherent-state keying alphabets: discrimination and rates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one Gram matrix with its structure flags.
    Gram(GramArgs),
    /// SRM success, bounds and optimality gap over total photons per symbol.
    Discriminate(DiscriminateArgs),
    /// Holevo rates per mode against capacity over photons per mode.
    Rates(SweepArgs),
    /// Tune the CFSK steps and print the result as JSON.
    Optimize(OptimizeArgs),
    /// Write figure data files.
    Figures(FigureArgs),
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gram(a) => commands::gram(&a),
        Command::Discriminate(a) => commands::discriminate_cmd(&a),
        Command::Rates(a) => commands::rates_cmd(&a),
        Command::Optimize(a) => commands::optimize_cmd(&a),
        Command::Figures(a) => figures::figures_cmd(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
