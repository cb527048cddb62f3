use std::process::ExitCode;

use clap::Parser;

use slope_cli::args::{Cli, Command};
use slope_cli::commands;

fn run(cli: &Cli) -> slope_cli::CliResult<()> {
    match &cli.command {
        Command::Prox(args) => commands::run_prox(args),
        Command::Fit(args) => commands::run_fit(args),
        Command::Check(args) => commands::run_check(args),
        Command::Simulate(args) => commands::run_simulate(args),
        Command::RecoveryCurve(args) => commands::run_recovery_curve(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
