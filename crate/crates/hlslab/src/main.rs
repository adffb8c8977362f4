use std::process::ExitCode;

use clap::Parser;
use hlslab::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match hlslab::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
