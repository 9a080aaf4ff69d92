use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use qwalk_cli::args::Cli;
use qwalk_cli::commands::Io;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let mut sinks = Io {
        stdout: &mut out,
        stderr: &mut err,
        verbose: cli.verbose,
    };
    let result = qwalk_cli::run(&cli, &mut sinks);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
