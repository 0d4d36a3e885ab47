use std::process::ExitCode;

use clap::Parser;
use mobius_lab::cli::{exit_code, run, Cli, RunConfig, RunStatus};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg));
    match outcome {
        Ok(RunStatus::Success) => ExitCode::SUCCESS,
        Ok(RunStatus::AcceptanceFailed) => ExitCode::from(3),
        Err(e) => {
            eprintln!("mlab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
