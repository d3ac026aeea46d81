use std::process::ExitCode;

use clap::Parser;

use gns_cli::Cli;

fn main() -> ExitCode {
    Cli::parse().run()
}
