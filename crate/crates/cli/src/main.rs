use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use glasspath_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.stdout.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("glasspath: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
