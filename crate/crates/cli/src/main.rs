use std::process::ExitCode;

use wronbeta_cli::{parse_args, run, UsageError};

fn main() -> ExitCode {
    let config = match parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e @ UsageError::Info(_)) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wronbeta: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
