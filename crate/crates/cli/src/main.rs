use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use islm_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut io::stdin().lock(), &mut out) {
        Ok(()) => {
            let _ = out.flush();
            ExitCode::SUCCESS
        }
        Err(err) => {
            let _ = out.flush();
            eprintln!("islm: {err}");
            ExitCode::FAILURE
        }
    }
}
