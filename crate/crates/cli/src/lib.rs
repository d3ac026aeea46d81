//! Command-line front end: the built-in golden examples, GNS reports for
//! JSON input documents, and the seeded law sweeps.
//!
//! Every run is a pure function of its arguments; reports for the same
//! command, inputs, seed, and tolerances are byte-identical. Exit status
//! is 0 when every certificate and law passed, 1 when a check failed, and
//! 2 for usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

mod example;
mod gns_run;
mod sweep;

pub use example::{run_example, EprReport, ExampleId, ExampleReport, QubitReport};
pub use gns_run::{run_gns, GnsRunReport};
pub use sweep::{run_sweep, SweepReport};

#[derive(Debug, Parser)]
#[command(
    name = "gns",
    version,
    about = "GNS constructions, certificates, and categorical law sweeps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reproduce a built-in golden example and check its pinned values.
    Example {
        /// Which example to run.
        #[arg(value_enum)]
        id: ExampleId,

        /// Override a check tolerance, repeatable: `--tol m_unitary=1e-12`.
        #[arg(long = "tol", value_name = "CHECK=VALUE", value_parser = parse_override)]
        tol: Vec<(String, f64)>,
    },

    /// Run the GNS construction on a JSON state document.
    Gns {
        /// Path of the input document: a state, optionally with a
        /// morphism into its algebra.
        #[arg(long)]
        input: PathBuf,
    },

    /// Check every law over seeded random instances.
    Sweep {
        /// Seed for the instance generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Instances per law.
        #[arg(long, default_value_t = 100)]
        instances: usize,

        /// Override a law tolerance, repeatable: `--tol zigzag=1e-6`.
        #[arg(long = "tol", value_name = "LAW=VALUE", value_parser = parse_override)]
        tol: Vec<(String, f64)>,
    },
}

fn parse_override(raw: &str) -> Result<(String, f64), String> {
    let (name, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got {raw:?}"))?;
    let parsed: f64 = value
        .parse()
        .map_err(|_| format!("tolerance {value:?} is not a number"))?;
    if !parsed.is_finite() || parsed < 0.0 {
        return Err(format!(
            "tolerance must be finite and nonnegative, got {value}"
        ));
    }
    Ok((name.to_string(), parsed))
}

impl Cli {
    /// Runs the selected command and maps its outcome to an exit status.
    pub fn run(&self) -> ExitCode {
        match &self.command {
            Command::Example { id, tol } => match run_example(*id, tol) {
                Ok(report) => self.finish(report.pass(), &report.text(), &report),
                Err(message) => usage_error(&message),
            },
            Command::Gns { input } => match run_gns(input) {
                Ok(report) => self.finish(report.pass(), &report.text(), &report),
                Err(message) => usage_error(&message),
            },
            Command::Sweep {
                seed,
                instances,
                tol,
            } => match run_sweep(*seed, *instances, tol) {
                Ok(report) => self.finish(report.pass, &report.text(), &report),
                Err(message) => usage_error(&message),
            },
        }
    }

    fn finish<R: Serialize>(&self, pass: bool, text: &str, report: &R) -> ExitCode {
        let body = match self.format {
            Format::Json => {
                let mut json =
                    serde_json::to_string_pretty(report).expect("reports serialize to JSON");
                json.push('\n');
                json
            }
            Format::Text => text.to_string(),
        };
        if let Some(path) = &self.output {
            if let Err(err) = std::fs::write(path, &body) {
                eprintln!("gns: cannot write {}: {err}", path.display());
                return ExitCode::from(2);
            }
        } else {
            print!("{body}");
        }
        if pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("gns: {message}");
    ExitCode::from(2)
}
