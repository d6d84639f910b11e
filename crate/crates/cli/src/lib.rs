//! The `oz` command-line tool as a library: flag parsing, run configuration,
//! execution and table output.

pub mod args;
pub mod config;
pub mod error;
pub mod output;
pub mod run;

use clap::Parser;

pub use args::Cli;
pub use config::{Format, Grid, RunConfig, Task};
pub use error::CliError;
pub use run::{render, run};

/// Sets the global thread pool size from `OZ_THREADS` when present.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("OZ_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("OZ_THREADS must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("OZ_THREADS: {e}")))
}

/// Parses `args`, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let print_config = cli.print_config;
    let outcome = configure_threads().and_then(|_| cli.into_config()).and_then(|config| {
        if print_config {
            println!("{}", config.to_json());
            Ok(())
        } else {
            run(&config)
        }
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("oz: {e}");
            e.exit_code()
        }
    }
}
