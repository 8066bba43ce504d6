use std::process::ExitCode;

use clap::Parser;
use isodual_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.module());
            ExitCode::from(2)
        }
    }
}
