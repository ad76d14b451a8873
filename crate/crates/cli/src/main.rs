use std::process::ExitCode;

use clap::Parser;
use dcsim_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = execute(cli.command);
    print!("{}", exec.report);
    if let Some(f) = &exec.failure {
        eprintln!("error: {f}");
    }
    ExitCode::from(exec.exit_code())
}
