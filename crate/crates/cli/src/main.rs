//! `cuh`: build, check and classify finite approximants from the command
//! line. Every run prints one report (JSON or text) and exits with 0 on
//! success, 1 on bad input, 2 when the answer is indeterminate and 3 when an
//! internal assertion fails.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use commands::{AmalgamArgs, BuildArgs, ClassifyArgs, OmittedArgs, PiecewiseArgs, UhArgs};
use report::{InputFile, Report, Status};

#[derive(Parser, Debug)]
#[command(name = "cuh", version, about = "Approximants of ultrahomogeneous 2-colored clique-union graphs")]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Write the report here instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Build an approximant of a class by extension closure
    Build(BuildArgs),
    /// Name the limit an approximant or graph belongs to
    Classify(ClassifyArgs),
    /// Minimally omitted graphs of a host graph
    Omitted(OmittedArgs),
    /// Search for counterexamples to the amalgamation property
    AmalgamCheck(AmalgamArgs),
    /// Exact ultrahomogeneity or k-homogeneity test of a small graph
    UhCheck(UhArgs),
    /// Test every union of a maximal red and a maximal blue clique
    PiecewiseCheck(PiecewiseArgs),
    /// The named small graphs used in omitted-set signatures
    Catalog,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Build(_) => "build",
            Command::Classify(_) => "classify",
            Command::Omitted(_) => "omitted",
            Command::AmalgamCheck(_) => "amalgam-check",
            Command::UhCheck(_) => "uh-check",
            Command::PiecewiseCheck(_) => "piecewise-check",
            Command::Catalog => "catalog",
        }
    }
}

/// Exit status for a failed run: internal assertions map to 3, everything
/// else to 1.
fn error_status(e: &anyhow::Error) -> Status {
    let internal = e.chain().any(|c| matches!(c.downcast_ref::<cuh_core::Error>(), Some(cuh_core::Error::Internal(_))));
    if internal {
        Status::InternalError
    } else {
        Status::InputError
    }
}

fn config_echo(cli: &Cli, seed: Option<u64>) -> Value {
    let args = serde_json::to_value(&cli.command).expect("arguments serialize");
    let args = match args {
        Value::Object(m) => m.into_iter().next().map_or(Value::Null, |(_, v)| v),
        _ => Value::Null,
    };
    let mut config = json!({ "format": cli.format, "jobs": cli.jobs, "args": args });
    if let Command::Build(_) = cli.command {
        config["effective_seed"] = json!(seed);
    }
    config
}

fn dispatch(cli: &Cli, seed: Option<u64>, inputs: &mut Vec<InputFile>) -> Result<(Status, Value)> {
    match &cli.command {
        Command::Build(a) => commands::build(a, seed, inputs),
        Command::Classify(a) => commands::classify_cmd(a, inputs),
        Command::Omitted(a) => commands::omitted(a, inputs),
        Command::AmalgamCheck(a) => commands::amalgam_check(a, inputs),
        Command::UhCheck(a) => commands::uh_check(a, inputs),
        Command::PiecewiseCheck(a) => commands::piecewise_check(a, inputs),
        Command::Catalog => commands::catalog_cmd(),
    }
}

fn run(cli: &Cli) -> Report {
    let mut inputs = Vec::new();
    let seed = match &cli.command {
        Command::Build(a) => commands::effective_seed(a.seed),
        _ => Ok(None),
    };
    let outcome = seed.and_then(|seed| {
        if let Some(n) = cli.jobs {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the worker pool")?;
        }
        Ok((seed, dispatch(cli, seed, &mut inputs)?))
    });
    match outcome {
        Ok((seed, (status, result))) => {
            let mut r = Report::new(cli.command.name(), config_echo(cli, seed), inputs, status);
            r.result = Some(result);
            r
        }
        Err(e) => {
            let status = error_status(&e);
            let mut r = Report::new(cli.command.name(), config_echo(cli, None), inputs, status);
            r.error = Some(format!("{e:#}"));
            r
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli);
    if let Some(e) = &report.error {
        eprintln!("cuh: {e}");
    }
    let rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let written = match &cli.report {
        Some(p) => std::fs::write(p, &rendered).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{rendered}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("cuh: {e:#}");
        return ExitCode::from(1);
    }
    ExitCode::from(report.exit_code as u8)
}
