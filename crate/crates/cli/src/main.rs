//! Batch driver for the parafermion verification engine.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use paraferm::coset::CheckId;
use paraferm::run::{emit_report, run, AlgebraChoice, Format, RunConfig};
use paraferm::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgebraArg {
    /// osp(1|2n); the rank comes from --n
    #[value(alias = "osp1")]
    Osp,
    Sl2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "paraferm", version, about = "Verify structure statements for osp(1|2n) parafermion vertex algebras")]
struct Cli {
    #[arg(long, value_enum, default_value = "osp")]
    algebra: AlgebraArg,

    /// Rank n of osp(1|2n).
    #[arg(long, default_value_t = 1)]
    n: usize,

    /// Level k (positive integer).
    #[arg(long)]
    k: i64,

    /// Report cutoff W.
    #[arg(long)]
    cutoff: u32,

    /// Working weight above the cutoff. Defaults to k + 1.
    #[arg(long)]
    headroom: Option<u32>,

    /// Comma-separated check ids, `all` or `none`.
    #[arg(long, default_value = "all")]
    checks: String,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,

    /// Worker threads (also PARAFERM_WORKERS).
    #[arg(long)]
    workers: Option<usize>,
}

fn parse_checks(s: &str) -> Result<Vec<CheckId>, Error> {
    match s.trim() {
        "all" => Ok(CheckId::ALL.to_vec()),
        "" | "none" => Ok(Vec::new()),
        list => list.split(',').map(|c| c.trim().parse()).collect(),
    }
}

fn config(cli: &Cli) -> Result<RunConfig, Error> {
    let algebra = match cli.algebra {
        AlgebraArg::Osp => AlgebraChoice::Osp(cli.n),
        AlgebraArg::Sl2 => AlgebraChoice::Sl2,
    };
    let cfg = RunConfig {
        algebra,
        level: cli.k,
        cutoff: cli.cutoff,
        headroom: cli.headroom,
        checks: parse_checks(&cli.checks)?,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        workers: cli.workers,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<bool, Error> {
    let cfg = config(cli)?;
    let report = run(&cfg)?;
    let bytes = emit_report(&report, cfg.format)?;
    match &cli.out {
        Some(p) => std::fs::write(p, &bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    for c in &report.checks {
        eprintln!("{:<12} {}", c.id, c.verdict.as_str());
    }
    Ok(!report.any_failed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Usage(_) | Error::UnknownCheck(_) | Error::InvalidArgument(_))) => {
            eprintln!("paraferm: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("paraferm: {e}");
            ExitCode::from(3)
        }
    }
}
