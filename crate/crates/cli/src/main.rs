//! `curvekit` command-line front end.
//!
//! Exit status: 0 on success, 1 for usage and parse errors, 2 when the
//! mathematics degenerates (identical curves, irregular base curve, ...).

mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};

fn run(cli: &Cli) -> Result<String, commands::CliError> {
    match &cli.command {
        Command::Intersect(a) => commands::intersect(a),
        Command::Area(a) => commands::area(a),
        Command::Period(a) => commands::period(a),
        Command::Symmetry(a) => commands::symmetry(a),
        Command::Roulette(a) => commands::roulette(a),
        Command::Decompose(a) => commands::decompose(a),
        Command::Plot(a) => commands::plot(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let text = match run(&cli) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
