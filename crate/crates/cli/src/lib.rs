//! Scenario loading and the commands of the `frobcat` tool.

pub mod run;
pub mod scenario;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

pub use run::{run, Command, Outcome, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
pub use scenario::{load_path, InputError, Overrides, Scenario};

#[derive(Debug, Parser)]
#[command(name = "frobcat", version, about = "Checks Frobenius pairs, stable categories and recollements on finite windows")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Cli {
    pub fn overrides(&self) -> Overrides {
        Overrides { depth: self.depth, budget: self.budget, seed: self.seed }
    }
}

/// Loads the scenario and runs the command, returning the exit code and the report.
pub fn execute(cli: &Cli) -> Result<Outcome, InputError> {
    let sc = load_path(&cli.scenario, cli.overrides())?;
    run(&sc, cli.command)
}

/// Runs the tool end to end: report to `--out` or standard output, errors to standard error.
pub fn main_with(cli: &Cli) -> i32 {
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("frobcat: {e}");
            return EXIT_INPUT;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.report),
        None => std::io::stdout().write_all(outcome.report.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("frobcat: cannot write report: {e}");
        return EXIT_INPUT;
    }
    outcome.exit
}
