use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use hyperlattice::error::EXIT_USAGE;
use hyperlattice::{run, Cli};
use serde_json::json;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE as u8),
            };
        }
    };
    match run(&cli.command) {
        Ok(value) => {
            let mut out = std::io::stdout().lock();
            let _ = serde_json::to_writer_pretty(&mut out, &value);
            let _ = writeln!(out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let body = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{body}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
