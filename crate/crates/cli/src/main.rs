//! `rvequiv`: batch front end. Every run prints exactly one JSON document
//! on standard output, or a diagnostic on standard error with exit >= 64.

mod commands;
mod problem;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exit statuses.
pub const AFFIRMATIVE: u8 = 0;
pub const NEGATIVE: u8 = 1;
pub const UNKNOWN: u8 = 2;
pub const EX_USAGE: u8 = 64;
pub const EX_DATAERR: u8 = 65;
pub const EX_NOINPUT: u8 = 66;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    NoInput(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EX_USAGE,
            Failure::Data(_) => EX_DATAERR,
            Failure::NoInput(_) => EX_NOINPUT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::NoInput(m) => m,
        }
    }
}

impl From<rvequiv::Error> for Failure {
    fn from(e: rvequiv::Error) -> Self {
        match e {
            rvequiv::Error::ContradictoryOptions(m) => Failure::Usage(m),
            other => Failure::Data(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rvequiv", version, about = "Relative Milnor algebras and R_V-equivalence")]
pub struct Cli {
    /// JSON problem file.
    #[arg(long, global = true)]
    pub problem: Option<PathBuf>,
    /// Master seed for every random choice.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Is f quasihomogeneous for the weights; checks Euler's identity.
    CheckQh,
    /// Weight systems making f quasihomogeneous.
    InferWeights,
    /// Tangent vector fields of one degree.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// Keep fields that do not vanish at the origin.
        #[arg(long)]
        all: bool,
    },
    /// Degree-0 monomial vector fields for the weights.
    Lie0,
    /// Graded dimensions of the relative Milnor algebra of f.
    Fingerprint {
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Compare the relative Jacobian ideals of f and g.
    IdealEqual {
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Pencil certificate for f and g.
    Pencil {
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Full equivalence pipeline.
    Decide {
        #[arg(long)]
        max_degree: Option<i64>,
        /// Try random degree-preserving substitutions.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 200)]
        draws: usize,
        #[arg(long, default_value_t = 3)]
        height: i64,
        /// Candidate substitution images, comma separated.
        #[arg(long, value_delimiter = ',')]
        subst: Vec<String>,
    },
    /// Check that u carries the ideal of g onto that of f.
    Transport {
        #[arg(long, value_delimiter = ',')]
        subst: Vec<String>,
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Compare fingerprints of f and f∘ψ for a V-preserving ψ.
    Forward {
        #[arg(long, value_delimiter = ',')]
        subst: Vec<String>,
        #[arg(long)]
        max_degree: Option<i64>,
    },
    /// Cross-check the main path against the dense oracle.
    Crosscheck {
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[arg(long, default_value_t = 10)]
        max_degree: i64,
    },
    /// Is f in its own Jacobian ideal.
    SaitoMembership,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EX_USAGE } else { AFFIRMATIVE };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok((report, code)) => {
            let text = serde_json::to_string_pretty(&report).expect("serializable report");
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("rvequiv: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
