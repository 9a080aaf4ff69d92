//! Command-line front end: argument parsing, file formats and the
//! keygen / encrypt / decrypt / analyze / demo workflows.

pub mod args;
pub mod commands;
pub mod error;
pub mod files;

use args::{Cli, Command};
use commands::Io;
use error::CliResult;

pub fn run(cli: &Cli, io: &mut Io) -> CliResult<()> {
    match &cli.command {
        Command::Keygen(a) => commands::cmd_keygen(a, io),
        Command::Encrypt(a) => commands::cmd_encrypt(a, io),
        Command::Decrypt(a) => commands::cmd_decrypt(a, io),
        Command::Analyze(a) => commands::cmd_analyze(a, io),
        Command::Demo(a) => commands::cmd_demo(a, io),
    }
}
