use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = scalekit::cli::Cli::parse();
    match scalekit::cli::execute(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
