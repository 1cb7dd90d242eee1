//! `defcalc`: command-line front end for the deformation engine.
//!
//! Every command builds a JSON value; `--json` prints it pretty, otherwise
//! the top-level fields are printed one per line. Exit status is 2 for bad
//! input and 1 when a computed result fails its own consistency checks.

mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use defcalc::Field;
use serde_json::Value;

use input::{AlgebraSpec, DeformationArgs};

#[derive(Debug, Parser)]
#[command(name = "defcalc", version, about = "Exact first-order deformation calculus for graded algebras")]
struct Cli {
    /// Coefficient field: Q or Fp:<p>
    #[arg(long, global = true, default_value = "Q")]
    field: Field,
    /// Print the full JSON result
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for commands with independent rows
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension and class representatives of Def_d
    Defspace {
        #[arg(long)]
        algebra: AlgebraSpec,
        #[arg(long, allow_hyphen_values = true)]
        d: i32,
    },
    /// Classifying coordinates (a, b) of a deformation of pmn, or alpha for cpn
    Classify(DeformationArgs),
    /// Whether a deformation of pmn is an exterior product
    Split(DeformationArgs),
    /// Whether a deformation of pmn is semi-split with respect to a factor
    Semisplit {
        #[command(flatten)]
        deformation: DeformationArgs,
        /// 1 or 2; both when omitted
        #[arg(long)]
        factor: Option<u8>,
    },
    /// Extension problem for the quantum product of a line in one factor
    Qext {
        #[command(flatten)]
        deformation: DeformationArgs,
        #[arg(long)]
        factor: u8,
    },
    /// Lower bound on the rank of pi_k for P_mn
    Bound {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Lower bound on the rank of pi_k for CP^m x CP^n with lambda > 1
    LambdaBound {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Integer solutions of the cusp-curve constraints
    Cusp {
        /// Rational lambda > 1, e.g. 5/2
        #[arg(long)]
        lambda: String,
    },
    /// Semi-split containments for pmn, one row per d
    Pipeline {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        /// Comma-separated even degrees; default 2, 4, ..., 2 max(m, n) + 2
        #[arg(long, value_delimiter = ',')]
        d: Vec<i32>,
        /// Pairs of classes re-solved directly per line
        #[arg(long, default_value_t = 3)]
        spot_checks: usize,
    },
    /// Checks the graded-commutative algebra axioms
    VerifyAlgebra {
        #[arg(long)]
        algebra: AlgebraSpec,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: exit 2.
    Usage(String),
    /// Failure while computing: exit 1.
    Internal(String),
}

impl From<defcalc::Error> for CliError {
    fn from(e: defcalc::Error) -> Self {
        use defcalc::Error::*;
        match e {
            Parse(_) | InvalidField(_) | InvalidArgument(_) | FieldMismatch(..) | Json(_) | InvalidAlgebra(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// A command result and whether its internal checks held.
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let field = cli.field;
    match &cli.command {
        Command::Defspace { algebra, d } => commands::defspace(algebra, *d, field),
        Command::Classify(args) => commands::classify(args, field),
        Command::Split(args) => commands::split(args, field),
        Command::Semisplit { deformation, factor } => commands::semisplit(deformation, *factor, field),
        Command::Qext { deformation, factor } => commands::qext(deformation, *factor, field),
        Command::Bound { m, n, k } => commands::bound(*m, *n, *k),
        Command::LambdaBound { m, n, k } => commands::lambda_bound(*m, *n, *k),
        Command::Cusp { lambda } => commands::cusp(lambda),
        Command::Pipeline { m, n, d, spot_checks } => commands::pipeline(*m, *n, d, *spot_checks, field),
        Command::VerifyAlgebra { algebra } => commands::verify_algebra(algebra, field),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(value: &Value, json: bool) -> String {
    if json {
        return serde_json::to_string_pretty(value).expect("values serialize") + "\n";
    }
    match value {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", scalar_text(v))).collect(),
        other => scalar_text(other) + "\n",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = render(&outcome.value, cli.json);
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: consistency check failed");
        ExitCode::from(1)
    }
}
