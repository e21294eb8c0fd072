//! `hsiao`: generate, verify and exercise Hsiao SEC-DED check matrices.
//!
//! Exit codes: 0 success, 1 semantic failure (verification failed, error
//! detected but not corrected, miscorrection seen), 2 bad input.

mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = commands::Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("hsiao: {err}");
            err.exit_code()
        }
    }
}
