use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use twistgt_core::jobs::{self, Command, Format, JobConfig, ModuleKind};
use twistgt_core::rat;
use twistgt_core::rootsys::Series;
use twistgt_core::{Error, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Weights,
    Gt,
    Verify,
    Realize,
    Lattice,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fmt {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Module {
    Twisted,
    Verma,
}

/// Exact computations with twisted generalized Verma modules.
#[derive(Debug, Parser)]
#[command(name = "twistgt", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Root system series (A, B, C, D, G, F).
    #[arg(long = "type", default_value = "A")]
    series: String,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    /// Comma-separated 1-based simple roots of the Levi factor.
    #[arg(long, default_value = "")]
    sigma: String,
    /// Comma-separated fundamental-weight coordinates, e.g. "1/3,2".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    lambda: String,
    /// `highest`, `simple:<i>`, or simple-root coordinates like "1,1".
    #[arg(long, default_value = "highest")]
    alpha: String,
    #[arg(long, default_value_t = 4)]
    cutoff: usize,
    /// Filtration depth for `gt` (default cutoff − 2).
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Fmt,
    /// Module whose weights are tabulated by `weights`.
    #[arg(long, value_enum, default_value = "twisted")]
    module: Module,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .map(str::trim)
        .filter(|t| !t.is_empty())
}

fn config(a: &Args) -> Result<JobConfig> {
    let sigma = split_list(&a.sigma)
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad sigma entry {t}"))))
        .collect::<Result<Vec<usize>>>()?;
    let lambda = split_list(&a.lambda).map(rat::parse).collect::<Result<Vec<_>>>()?;
    Ok(JobConfig {
        command: match a.command {
            Cmd::Weights => Command::Weights,
            Cmd::Gt => Command::Gt,
            Cmd::Verify => Command::Verify,
            Cmd::Realize => Command::Realize,
            Cmd::Lattice => Command::Lattice,
        },
        series: a.series.parse::<Series>()?,
        rank: a.rank,
        sigma,
        lambda,
        alpha: a.alpha.clone(),
        cutoff: a.cutoff,
        depth: a.depth,
        seed: a.seed,
        module: match a.module {
            Module::Twisted => ModuleKind::Twisted,
            Module::Verma => ModuleKind::Verma,
        },
        format: match a.format {
            Fmt::Json => Format::Json,
            Fmt::Csv => Format::Csv,
        },
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("twistgt: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = jobs::run(&cfg);
    let code = jobs::exit_code(&outcome);
    match &outcome {
        Ok(report) => {
            let text = match report.render() {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("twistgt: {e}");
                    return ExitCode::from(1);
                }
            };
            let written = match &args.out {
                Some(path) => std::fs::write(path, text).map_err(Error::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("twistgt: {e}");
                return ExitCode::from(1);
            }
            if !report.passed {
                eprintln!("twistgt: {} reported failures", cfg.command);
            }
        }
        Err(e) => eprintln!("twistgt: {e}"),
    }
    ExitCode::from(code as u8)
}
