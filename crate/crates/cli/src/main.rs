use std::process::ExitCode;

use clap::Parser;

use flatband_cli::commands::EXIT_INPUT;
use flatband_cli::{render, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            print!("{}", render(&outcome, cli.json));
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
