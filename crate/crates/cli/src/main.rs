//! `orbigw`: census, quantum ring, Riemann-Roch, map and correlator
//! computations for weighted projective lines.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit status for a check that ran and failed.
const EXIT_FAILED_CHECK: u8 = 1;
/// Exit status for bad input, matching clap's usage errors.
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            if let Err(e) = commands::emit(&cli, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED_CHECK)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_check_failure() { EXIT_FAILED_CHECK } else { EXIT_USAGE })
        }
    }
}
