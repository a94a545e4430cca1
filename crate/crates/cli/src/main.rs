use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

#[derive(Parser, Debug)]
#[command(name = "logsurf", version, about = "Exact log Chern slopes of curve arrangements and lines on quartic K3 surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; dot is only meaningful for `lines`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Seed for the randomized root finding.
    #[arg(long, global = true, env = "LOGSURF_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Reduction budget for Groebner computations, or candidate budget for searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Dot,
}

/// Where weak combinatorics come from.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Catalog entry, e.g. `dual-hesse` or `ceva:4`.
    #[arg(long)]
    pub catalog: Option<String>,
    /// JSON or TOML file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Log Chern numbers, slope and inequality flags.
    Slope(Source),
    /// Every applicable inequality with its exact slack.
    Check(Source),
    /// Chern numbers of the Kummer cover of a line arrangement.
    Kummer {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        exponent: u64,
    },
    /// List the catalog, or show one entry.
    Catalog { name: Option<String> },
    /// Lines on a quartic surface reduced modulo a prime.
    Lines(LinesArgs),
    /// Check a table of plane pairs against a rational quartic.
    Verify {
        /// Table of eight rationals per row.
        #[arg(long)]
        lines: PathBuf,
        /// Quartic file (JSON or TOML).
        #[arg(long)]
        file: PathBuf,
    },
    /// Exhaustive search over weak combinatorics.
    Search {
        /// `sommese` or `slope3:N`.
        #[arg(long, conflicts_with = "file")]
        builtin: Option<String>,
        /// Search spec (JSON or TOML).
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct LinesArgs {
    /// Quartic file (JSON or TOML).
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub prime: u64,
    /// Extension degree n of F_{p^n}.
    #[arg(long, default_value_t = 1)]
    pub ext: usize,
    /// Which root of the minimal polynomial the algebraic number maps to.
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Write the incidence graph here (`.json` for JSON, DOT otherwise).
    #[arg(long)]
    pub export_graph: Option<PathBuf>,
    /// Connected components through points of at least this multiplicity.
    #[arg(long)]
    pub components: Option<usize>,
    /// Sub-configuration: `comp0+comp1` or line indices like `0-15,20`.
    #[arg(long)]
    pub subset: Option<String>,
    /// Skip the reducedness check of the line scheme.
    #[arg(long)]
    pub no_reduction_check: bool,
}

/// Report text, plus a failure message for reports that are not a success.
pub struct Outcome {
    pub out: String,
    pub failure: Option<String>,
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    if cli.format == Format::Dot && !matches!(cli.command, Command::Lines(_)) {
        bail!("--format dot only applies to the lines subcommand");
    }
    commands::dispatch(&cli)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome { out, failure }) => {
            print!("{out}");
            match failure {
                None => ExitCode::SUCCESS,
                Some(m) => {
                    eprintln!("error: {m}");
                    ExitCode::FAILURE
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
