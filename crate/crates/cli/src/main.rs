mod args;
mod commands;
mod input;
mod output;

use args::{Cli, Command};
use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let provenance = format!("fracrelax {}", argv.join(" "));
    let outcome = match &cli.command {
        Command::Ml(a) => commands::cmd_ml(a, &provenance),
        Command::Kernel(a) => commands::cmd_kernel(a, &provenance),
        Command::Eval(a) => commands::cmd_eval(a, &provenance),
        Command::Spectrum(a) => commands::cmd_spectrum(a, &provenance),
        Command::Solve(a) => commands::cmd_solve(a, &provenance),
        Command::Fit(a) => commands::cmd_fit(a, &provenance),
        Command::Verify(a) => commands::cmd_verify(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fracrelax: {}", f.message());
            ExitCode::from(f.code() as u8)
        }
    }
}
