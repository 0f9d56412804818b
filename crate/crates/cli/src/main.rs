//! `dcomplete`: checks d-complete posets, lists excited diagrams and verifies
//! the skew hook formula for P-partitions.

mod commands;
mod input;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dcomplete::dcomplete::BuilderSpec;
use dcomplete::excitation::ExcitationError;
use dcomplete::genfun::GenfunError;
use dcomplete::{ColoredPoset, DcError};
use thiserror::Error;

use commands::{Report, VerifyOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Mismatch(String),
}

impl From<DcError> for CliError {
    fn from(e: DcError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ExcitationError> for CliError {
    fn from(e: ExcitationError) -> Self {
        match e {
            ExcitationError::PeakMismatch { .. } | ExcitationError::DecompositionMismatch => {
                CliError::Mismatch(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GenfunError> for CliError {
    fn from(e: GenfunError) -> Self {
        match e {
            GenfunError::Excitation(e) => e.into(),
            GenfunError::NonIntegerResult(_) => CliError::Mismatch(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "dcomplete",
    version,
    about = "d-complete posets, excited diagrams and hook formulas"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also print beta roots and normal forms.
    #[arg(long, global = true)]
    debug: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PosetArgs {
    /// Builder spec as inline JSON or a file, e.g. '{"shape":[5,4,2,1]}'.
    #[arg(long)]
    poset: String,
    /// Treat a d-complete poset as a heap: excitations use the next element
    /// of the same color and hooks come from inversion roots.
    #[arg(long)]
    heap_mode: bool,
}

#[derive(Args)]
struct FilterArg {
    /// Order filter as inline JSON or a file: {"partition":[..]},
    /// {"cells":[[i,j],..]} or {"elements":[..]}. Defaults to empty.
    #[arg(long)]
    filter: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the d-complete axioms and the coloring.
    Check {
        #[command(flatten)]
        input: PosetArgs,
    },
    /// Print hook monomials and hook lengths.
    Hooks {
        #[command(flatten)]
        input: PosetArgs,
    },
    /// List excited diagrams of a filter with their excited peaks.
    Excited {
        #[command(flatten)]
        input: PosetArgs,
        #[command(flatten)]
        filter: FilterArg,
        /// List K-theoretical excited diagrams instead.
        #[arg(long)]
        k_theoretic: bool,
    },
    /// Verify the skew hook formula and its specializations.
    Verify {
        #[command(flatten)]
        input: PosetArgs,
        #[command(flatten)]
        filter: FilterArg,
        /// Degree cap for the series comparisons.
        #[arg(long, default_value_t = 8)]
        degree: u32,
        /// Seed for the random weights of the colored hook formula.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random weight vectors.
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

pub fn build(spec: &BuilderSpec, heap_mode: bool) -> Result<ColoredPoset, CliError> {
    let cp = spec.build()?;
    Ok(if heap_mode { cp.as_heap() } else { cp })
}

fn load(input: &PosetArgs) -> Result<ColoredPoset, CliError> {
    build(&input::parse_spec(&input.poset)?, input.heap_mode)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let (mut report, debug_target) = match &cli.command {
        Command::Check { input } => {
            let spec = input::parse_spec(&input.poset)?;
            let report = commands::check(&spec, input.heap_mode)?;
            (
                report,
                build(&spec, input.heap_mode).ok().map(|cp| (cp, None)),
            )
        }
        Command::Hooks { input } => {
            let cp = load(input)?;
            (commands::hooks(&cp)?, Some((cp, None)))
        }
        Command::Excited {
            input,
            filter,
            k_theoretic,
        } => {
            let cp = load(input)?;
            let f = input::resolve_filter(&cp, filter.filter.as_deref())?;
            (
                commands::excited(&cp, f, *k_theoretic, cli.debug)?,
                Some((cp, Some(f))),
            )
        }
        Command::Verify {
            input,
            filter,
            degree,
            seed,
            trials,
        } => {
            let cp = load(input)?;
            let f = input::resolve_filter(&cp, filter.filter.as_deref())?;
            let opts = VerifyOptions {
                degree: *degree,
                seed: *seed,
                trials: *trials,
            };
            (commands::verify(&cp, f, &opts)?, Some((cp, Some(f))))
        }
    };
    if cli.debug {
        if let Some((cp, f)) = debug_target {
            let (text, json) = commands::debug_dump(&cp, f)?;
            report.text.push_str(&text);
            report.json["debug"] = json;
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => {
                    let mut json = report.json;
                    json["pass"] = report.pass.into();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json).expect("serializable")
                    );
                }
            }
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Mismatch(_) => 1,
                CliError::Input(_) => 2,
            })
        }
    }
}
