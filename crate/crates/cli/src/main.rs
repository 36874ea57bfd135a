//! `mwis`: solve, validate, generate and benchmark maximum weight independent
//! set instances.

mod bench;
mod check;
mod gen;
mod settings;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mwis_core::{Error, ErrorKind};

#[derive(Parser)]
#[command(
    name = "mwis",
    version,
    about = "Exact maximum weight independent set on subdivided-claw-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance.
    Solve(solve::SolveArgs),
    /// Validate a decomposition, tree decomposition or decomposer outcome.
    Check(check::CheckArgs),
    /// Generate instances.
    Gen(gen::GenArgs),
    /// Run algorithms over a directory of instances and print CSV.
    Bench(bench::BenchArgs),
}

/// What a command ends with besides plain success.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    /// Unreadable files, bad flags and similar.
    Usage(String),
    /// An induced subdivided claw where freeness was asserted.
    Witness,
    /// A validator found problems.
    Violations,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violations => 1,
            Failure::Usage(_) => 2,
            Failure::Witness => 3,
            Failure::Core(e) => match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Capacity => 4,
                ErrorKind::Internal => 5,
            },
        }
    }
}

pub fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve::run(args),
        Command::Check(args) => check::run(args),
        Command::Gen(args) => gen::run(args),
        Command::Bench(args) => bench::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Witness | Failure::Violations => {}
            }
            ExitCode::from(f.code())
        }
    }
}
