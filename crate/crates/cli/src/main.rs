use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qvh_cli::render::render;
use qvh_cli::{dispatch, merge_config_file, Cli, RunConfig};

fn run() -> Result<String, qvh_cli::CliError> {
    let argv = merge_config_file(std::env::args_os().collect())?;
    let cli = Cli::try_parse_from(argv).unwrap_or_else(|e| e.exit());
    let config = RunConfig::from_cli(cli)?;
    let env = dispatch(&config)?;
    Ok(render(&env, config.format))
}

fn main() -> ExitCode {
    match run() {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
