mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use schur_transform::{Error, Limits};

use args::{Cli, Command};
use commands::RunContext;

const EXIT_OTHER: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.chain().find_map(|e| e.downcast_ref::<Error>()) {
        Some(Error::Range { .. } | Error::Argument(_)) => EXIT_USAGE,
        Some(Error::Resource { .. }) => EXIT_RESOURCE,
        Some(Error::InvariantViolation { .. }) => EXIT_VERIFICATION,
        _ => EXIT_OTHER,
    }
}

fn limits(cli: &Cli) -> anyhow::Result<Limits> {
    let mut limits = Limits::default();
    if let Some(n_max) = cli.n_max {
        limits = limits.with_n_max(n_max)?;
    }
    if let Some(mib) = cli.budget {
        limits = limits.with_budget_mib(mib);
    }
    Ok(limits)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let ctx = RunContext {
        limits: limits(&cli)?,
        cache: cli.cache.clone(),
    };
    match &cli.command {
        Command::Table { n } => print!("{}", commands::table(&ctx, *n)?),
        Command::Selfcheck { n, k } => {
            let report = commands::selfcheck(&ctx, *n, *k)?;
            println!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(EXIT_VERIFICATION));
            }
        }
        Command::Transform { input, stats, output } => commands::transform(&ctx, input, stats, output)?,
        Command::Content {
            input,
            n,
            mode,
            stats,
            output,
        } => commands::content(&ctx, input, *n, (*mode).into(), stats, output)?,
        Command::Classify {
            classes,
            candidate,
            n,
            metric,
            normalize,
            output,
        } => commands::classify(&ctx, classes, candidate, *n, (*metric).into(), *normalize, output)?,
    }
    Ok(ExitCode::SUCCESS)
}
