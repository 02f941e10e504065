use std::process::ExitCode;

use clap::Parser;
use outersolve::cli::{run, Cli, EXIT_INPUT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("outersolve: {e}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
