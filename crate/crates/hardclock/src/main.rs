//! Binary entry point: parse, run, map failures to exit codes.
//!
//! Exit codes are part of the contract: `0` for success (including empty
//! result tables), `2` for usage errors (clap parse failures and domain
//! rejections alike), `3` for numerical failures. A numerical failure also
//! writes one machine-readable JSON object to standard error.

use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod output;

use commands::CliError;
use output::json_string;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests print through clap and succeed; real
            // parse errors exit with the usage code.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical { kind, message }) => {
            eprintln!(
                "{{\"error\":{{\"kind\":{},\"message\":{}}}}}",
                json_string(kind),
                json_string(&message)
            );
            ExitCode::from(3)
        }
    }
}
