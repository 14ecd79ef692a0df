//! Command-line front end: `eval`, `verify {identities|norms|kernels}`, `norm`.
//!
//! Exit status is 0 when everything passed, 1 on failed checks or numerical
//! errors, 2 on usage errors.

mod args;
mod commands;
mod parse;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Verify(a) => commands::verify(&a.suite),
        Command::Norm(a) => commands::norm(a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
