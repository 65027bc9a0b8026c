mod args;
mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Exit statuses.
pub const OK: u8 = 0;
pub const FINDINGS: u8 = 1;
pub const USAGE: u8 = 2;
pub const INTERNAL: u8 = 3;

/// A finished command: text for stdout and an exit status.
pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

pub enum Failure {
    Usage(String),
    Internal(String),
}

impl From<spectral_cone::Error> for Failure {
    fn from(e: spectral_cone::Error) -> Self {
        use spectral_cone::Error as E;
        match e {
            E::Internal(_) | E::NotHermitian(_) | E::NonIntegral(_) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(status);
        }
    };
    match commands::run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(INTERNAL);
            }
            ExitCode::from(out.status)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `spectral-cone --help` for usage");
            ExitCode::from(USAGE)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(INTERNAL)
        }
    }
}
