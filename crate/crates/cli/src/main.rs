use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use distortion_cli::commands::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, err) = run(&cli);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    if let Some(e) = err {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.code as u8)
}
