mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

impl CliError {
    /// 2 for invalid input, 3 for grids too coarse for the requested
    /// numerics, 1 otherwise.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(fracsense::Error::Resolution { .. }) => 3,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
