use std::io;
use std::process::ExitCode;

use clap::Parser;
use ehrhart_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::from(Cli::parse());
    let code = run(&cfg, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
