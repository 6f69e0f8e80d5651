use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use seifert_calc::{run, verify_from_env, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, &mut io::stdin(), verify_from_env()) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("seifert-calc: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
