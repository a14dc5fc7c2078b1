use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ordaut::cli::{run, Cli, Status};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::InputError.code() } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{}", out.json);
            ExitCode::from(out.status.code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Status::InputError.code())
        }
    }
}
