use std::process::ExitCode;

use clap::Parser;
use qzeta::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = qzeta::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
