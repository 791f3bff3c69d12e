use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use qcti_cli::{run, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Verify constant-term identities and their lemmas on parameter grids.
#[derive(Debug, Parser)]
#[command(name = "qcti", version)]
struct Args {
    /// JSON run configuration (see CONFIG.md).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run; repeatable. Replaces the config's suite list, using the
    /// config's grid for a suite when it has one and the default otherwise.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Worker threads (0 = one per core).
    #[arg(long)]
    jobs: Option<usize>,
    /// Per-point timeout in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match real_main(args) {
        Ok(failed) => {
            if failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("qcti: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main(args: Args) -> anyhow::Result<bool> {
    let mut config = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if !args.suites.is_empty() {
        config.select(&args.suites)?;
    }
    if let Some(j) = args.jobs {
        config.jobs = j;
    }
    if let Some(t) = args.timeout {
        config.timeout_secs = Some(t);
    }
    if args.out.is_some() {
        config.out = args.out.clone();
    }
    let report = run(&config)?;
    let body = match args.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    match &config.out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{body}"),
    }
    eprintln!("{}", report.summary_line());
    Ok(report.failed())
}
