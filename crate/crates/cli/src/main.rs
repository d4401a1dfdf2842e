//! `hyperspline` command-line front end.
//!
//! Exit codes: 0 ok, 2 invalid input or flags, 3 numerical regime failure
//! (dominance lost, overflow, singular local system), 4 shape search failure.
//! Failures print one line `error: <category>: <reason>` on stderr.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperspline::{EndKind, ShapeProperty, SplineError};

/// Seed used by `limit` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20240607;

#[derive(Parser, Debug)]
#[command(name = "hyperspline", version, about = "Fit and study hyperbolic tension splines")]
pub struct Cli {
    /// Output path. The companion artifact (coefficients or report) is
    /// written next to it with a suffix.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Seed for generated data.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fit a spline to a data file and sample it.
    Fit(FitArgs),
    /// Mesh refinement study on a built-in function.
    Converge(ConvergeArgs),
    /// Distance to the zero-tension limit as the tension halves.
    Limit(LimitArgs),
    /// Shrink the tension of a Hermite fit until a shape property holds.
    Shape(ShapeArgs),
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// JSON request document.
    #[arg(long, conflicts_with = "input_csv", required_unless_present = "input_csv")]
    pub input: Option<PathBuf>,
    /// Two-column `x,y` CSV with header.
    #[arg(long)]
    pub input_csv: Option<PathBuf>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub order: Option<u8>,
    #[arg(long, value_enum)]
    pub family: Option<FitFamily>,
    #[arg(long, value_parser = parse_end)]
    pub end: Option<EndKind>,
    /// End payload at the left end (first or second derivative).
    #[arg(long, allow_negative_numbers = true)]
    pub left: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub right: Option<f64>,
    /// Sample points per interval.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FitFamily {
    S,
    T,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StudyFamily {
    S,
    T,
    Linear,
    Cubic,
    Hermite,
    CubicHermite,
}

#[derive(Args, Debug)]
pub struct StudyArgs {
    #[arg(long, value_enum)]
    pub family: StudyFamily,
    /// Required for the `s` and `t` families.
    #[arg(long)]
    pub order: Option<u8>,
    #[arg(long, value_parser = parse_end, default_value = "I")]
    pub end: EndKind,
    /// Sample points per interval for the sup error.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[arg(long)]
    pub function: String,
    /// Defaults to the function's built-in interval.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long)]
    pub alpha: f64,
    /// Interval counts, each double the previous.
    #[arg(long, num_args = 1.., required = true)]
    pub levels: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub deriv: usize,
    #[command(flatten)]
    pub study: StudyArgs,
}

#[derive(Args, Debug)]
pub struct LimitArgs {
    /// Sample a built-in function instead of seeded random data.
    #[arg(long)]
    pub function: Option<String>,
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    /// Defaults to [0, 3] for seeded data and the function's interval otherwise.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    /// Tension values, each half the previous.
    #[arg(long, num_args = 0..)]
    pub alphas: Vec<f64>,
    #[command(flatten)]
    pub study: StudyArgs,
}

#[derive(Args, Debug)]
pub struct ShapeArgs {
    #[arg(long, conflicts_with = "input_csv", required_unless_present = "input_csv")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub input_csv: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub property: ShapeArg,
    #[arg(long, default_value_t = 1.0)]
    pub alpha0: f64,
    #[arg(long, default_value_t = hyperspline::hermite::DEFAULT_RESOLUTION)]
    pub resolution: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Positive,
    MonotoneUp,
    MonotoneDown,
    Convex,
}

impl From<ShapeArg> for ShapeProperty {
    fn from(p: ShapeArg) -> Self {
        match p {
            ShapeArg::Positive => ShapeProperty::Positive,
            ShapeArg::MonotoneUp => ShapeProperty::MonotoneUp,
            ShapeArg::MonotoneDown => ShapeProperty::MonotoneDown,
            ShapeArg::Convex => ShapeProperty::Convex,
        }
    }
}

fn parse_end(s: &str) -> Result<EndKind, String> {
    match s {
        "I" | "1" => Ok(EndKind::TypeI),
        "II" | "2" => Ok(EndKind::TypeII),
        "III" | "3" => Ok(EndKind::TypeIII),
        _ => Err(format!("unknown end type {s:?} (expected I, II or III)")),
    }
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Regime(String),
    Search(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Regime(_) => 3,
            Failure::Search(_) => 4,
        }
    }

    fn line(&self) -> String {
        let (cat, msg) = match self {
            Failure::Invalid(m) => ("validation", m),
            Failure::Regime(m) => ("regime", m),
            Failure::Search(m) => ("search", m),
            Failure::Io(m) => ("io", m),
        };
        format!("error: {cat}: {}", msg.replace('\n', " "))
    }
}

impl From<SplineError> for Failure {
    fn from(e: SplineError) -> Self {
        match e {
            SplineError::Overflow { .. }
            | SplineError::TensionTooLarge { .. }
            | SplineError::NotDominant { .. }
            | SplineError::SingularLocalSystem { .. }
            | SplineError::SingularSystem { .. }
            | SplineError::DivideByZero => Failure::Regime(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("bad arguments");
            eprintln!("{}", Failure::Invalid(first.trim_start_matches("error: ").to_string()).line());
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Fit(a) => commands::fit(&cli, a),
        Command::Converge(a) => commands::converge(&cli, a),
        Command::Limit(a) => commands::limit(&cli, a),
        Command::Shape(a) => commands::shape(&cli, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.line());
            ExitCode::from(f.code())
        }
    }
}
