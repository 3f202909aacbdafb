use std::process::ExitCode;

use clap::Parser;
use rbx::cli::{run, Cli};

fn main() -> ExitCode {
    let report = run(Cli::parse());
    if !report.stdout.is_empty() {
        println!("{}", report.stdout);
    }
    if !report.stderr.is_empty() {
        eprintln!("{}", report.stderr);
    }
    ExitCode::from(report.code as u8)
}
