mod commands;
mod reference;
mod resolve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rootfire_core::Error;

pub const MAX_POINTS_ENV: &str = "ROOTFIRE_MAX_POINTS";

/// Interval root-firing on weight lattices: stabilization, graphs,
/// fiber polynomials and verification suites.
#[derive(Parser, Debug)]
#[command(name = "rootfire", version, about)]
pub struct Cli {
    /// Cap on lattice points visited by any single operation
    /// (overrides ROOTFIRE_MAX_POINTS).
    #[arg(long, global = true, value_name = "N")]
    pub max_points: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan data, roots and invariants of a root system.
    Info(Opts),
    /// Stabilize a weight: [SYSTEM] [KIND] [K] [WEIGHT].
    Stabilize(Opts),
    /// Export the firing graph on a region: [SYSTEM] [KIND] [K].
    Graph(Opts),
    /// All weights stabilizing to η_k(λ): [SYSTEM] [KIND] [K] [WEIGHT].
    Fiber(Opts),
    /// Fit the fiber-count polynomial: [SYSTEM] [sym|tr|perm] [WEIGHT].
    Ehrhart(Opts),
    /// Run a verification suite: SUITE [SYSTEM].
    Verify(Opts),
}

#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    /// Positional arguments; see the subcommand description.
    #[arg(value_name = "ARGS")]
    pub positional: Vec<String>,

    /// Root system, e.g. A2, B3, G2.
    #[arg(long)]
    pub system: Option<String>,
    /// Firing kind: sym, tr or central (ehrhart also accepts perm).
    #[arg(long)]
    pub kind: Option<String>,
    /// Parameter: "k" or "k_s,k_l".
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Short-root parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub ks: Option<i64>,
    /// Long-root parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub kl: Option<i64>,
    /// Weight in fundamental coordinates "c1,...,cn".
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Region: "R" for [-R,R]^n or "LO:HI" for [LO,HI]^n.
    #[arg(long = "box", allow_hyphen_values = true, value_name = "R")]
    pub region_box: Option<String>,
    /// Region: the permutohedron of a dominant weight.
    #[arg(long, value_name = "WEIGHT")]
    pub perm: Option<String>,
    /// Output format: text, json, dot or svg.
    #[arg(long)]
    pub format: Option<String>,
    /// Seed for randomized firing orders.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random firing orders per weight.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Proceed with non-good parameters.
    #[arg(long)]
    pub force: bool,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest coordinate of dominant weights in the traverse suite.
    #[arg(long)]
    pub cmax: Option<i64>,
    /// Polynomial degree bound for fits.
    #[arg(long)]
    pub degree: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Failed(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Failed(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::ResourceCap { .. } => 3,
                Error::Invariant(_) | Error::StepBudget { .. } | Error::FitInconsistent(_) => 2,
                _ => 1,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => format!("usage error: {m}"),
            CliError::Failed(m) => format!("verification failed: {m}"),
            CliError::Io(e) => format!("i/o error: {e}"),
            CliError::Core(Error::ResourceCap { cap }) => {
                format!("resource cap of {cap} points exceeded (raise with --max-points or {MAX_POINTS_ENV})")
            }
            CliError::Core(e) => format!("error: {e}"),
        }
    }
}

/// Shields coordinate lists such as "-1,0" from being read as flags; every
/// consumer trims its input.
fn shield_negative(arg: String) -> String {
    let mut chars = arg.chars();
    if chars.next() == Some('-') && chars.next().is_some_and(|c| c.is_ascii_digit()) {
        format!(" {arg}")
    } else {
        arg
    }
}

fn main() -> ExitCode {
    let args = std::env::args().map(shield_negative);
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
