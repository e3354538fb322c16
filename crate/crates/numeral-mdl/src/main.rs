use std::process::ExitCode;

use clap::Parser;
use numeral_mdl::cli::{configure_threads, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("numeral-mdl: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
