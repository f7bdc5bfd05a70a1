//! `fsdet`: bounds, evaluations, searches and verification suites for
//! coefficient determinants of starlike functions.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.

mod cli;
mod commands;
mod config;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command, Format};
use config::FileConfig;

const SEED_ENV: &str = "FSDET_SEED";
const DEFAULT_SEED: u64 = 42;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fsdet_core::Error),
}

fn resolve_seed(flag: Option<u64>, file: &FileConfig) -> Result<u64, CliError> {
    if let Some(s) = flag.or(file.get("seed")?) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV}: invalid seed `{v}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let seed = resolve_seed(cli.seed, &file)?;
    let format = match cli.format {
        Some(f) => f,
        None => file.format()?.unwrap_or(Format::Json),
    };
    if let Some(n) = cli.threads.or(file.get("threads")?) {
        if n == 0 {
            return Err(CliError::Usage("threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }

    let stdout = io::stdout();
    let mut out = stdout.lock();
    let outcome = match &cli.command {
        Command::Bound(a) => commands::bound(a, seed)?,
        Command::Eval(a) => commands::eval(a, seed)?,
        Command::Search(a) => commands::run_search(a, &file, seed)?,
        Command::Sweep(a) => commands::sweep(a, &file, seed)?,
        Command::Table(a) => commands::table(a.name, seed)?,
        Command::Verify(a) => commands::verify(a, &file, seed)?,
        Command::Coeffs(a) => match commands::coeffs(a, seed, format == Format::Csv, &mut out)? {
            Some(o) => o,
            None => return Ok(true),
        },
    };
    out.write_all(outcome.report.render(format).as_bytes())
        .map_err(|e| CliError::Usage(format!("writing output: {e}")))?;
    if outcome.violation {
        eprintln!("fsdet: verification found violations");
    }
    Ok(!outcome.violation)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("fsdet: {e}");
            ExitCode::from(2)
        }
    }
}
