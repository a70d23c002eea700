mod args;
mod bench;
mod commands;
mod error;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    match cli.command {
        Command::Stats { input, format } => commands::stats(&input, format, &mut out)?,
        Command::Truss { input, k, dump_groups } => commands::truss(&input, k, dump_groups.as_deref(), &mut out)?,
        Command::Decompose { input } => commands::decompose(&input, &mut out)?,
        Command::Minimize(args) => commands::minimize(&args, &mut out, &mut err)?,
        Command::Bench(args) => match &args.output {
            Some(path) => {
                let file = File::create(path).map_err(|e| CliError::io(path, e))?;
                bench::run(&args, &mut BufWriter::new(file), &mut err)?
            }
            None => bench::run(&args, &mut out, &mut err)?,
        },
    }
    out.flush().map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors by itself.
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
