pub mod checks;
pub mod commands;
pub mod config;
pub mod error;

use commands::Report;
use config::Job;
use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Datum,
    Classes,
    Decompose,
    Hmap,
    Kottwitz,
    Check,
}

pub fn run(command: Command, job: &Job) -> Result<Report, CliError> {
    match command {
        Command::Datum => commands::datum(job),
        Command::Classes => commands::classes(job),
        Command::Decompose => commands::decompose(job),
        Command::Hmap => commands::hmap(job),
        Command::Kottwitz => commands::kottwitz(job),
        Command::Check => checks::check(job),
    }
}
