//! `qpluri` — computations on JSON inputs and named verification suites.
//!
//! Exit codes: 0 success/pass, 1 a check failed (suite did not pass, or a
//! normalization residual exceeded the tolerance), 2 input could not be
//! read or parsed, 3 input parsed but violated a mathematical precondition
//! (not hyperhermitian, not real, dimension mismatch), 4 usage error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qpluri_cli::json::{FieldDoc, FormDoc, NormalizeDoc, QMatrixDoc};
use qpluri_cli::suites::{run_suite, SuiteOpts, SUITE_NAMES};
use qpluri_core::baston::ma_mixed;
use qpluri_core::exterior::{normal_form_residual, normalize_real_2form};
use qpluri_core::moore::moore_det;
use qpluri_core::DEFAULT_TOL;

#[derive(Parser)]
#[command(name = "qpluri", version, about = "Quaternionic linear algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct IoArgs {
    /// Input file (standard input when omitted)
    #[arg(long)]
    json: Option<PathBuf>,

    /// Structural tolerance for preconditions and residual gates
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Output file (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Moore determinant of a hyperhermitian quaternion matrix
    Det(IoArgs),

    /// Normal form of a real 2-form: unitary, spectrum, and residual
    Normalize(IoArgs),

    /// Mixed Monge-Ampère operator of n scalar fields at a point
    Ma {
        /// Scalar-field files, one per argument; n files fix dimension ℍⁿ
        #[arg(required = true)]
        fields: Vec<PathBuf>,

        /// Evaluation point as a JSON array of 4n reals
        #[arg(long)]
        point: String,

        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,

        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Run a named verification suite and report JSON
    Verify {
        /// One of: tau, moore, thm12, forms, dops, thm13, fundsol,
        /// invariance, all
        suite: String,

        #[arg(long, default_value_t = 1)]
        seed: u64,

        /// Cases per suite (suite-specific default when omitted)
        #[arg(long)]
        cases: Option<usize>,

        /// Structural tolerance forwarded to core operations
        #[arg(long)]
        tol: Option<f64>,

        /// Cap on the quaternionic dimension exercised
        #[arg(long)]
        n: Option<usize>,

        /// Pin the fundamental-solution regularization instead of sampling
        #[arg(long)]
        eps: Option<f64>,

        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure classes, in exit-code order.
enum Failure {
    Parse(String),
    Precondition(qpluri_core::Error),
    Usage(String),
}

impl From<qpluri_core::Error> for Failure {
    fn from(e: qpluri_core::Error) -> Failure {
        Failure::Precondition(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Parse(e.to_string())
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => Ok(std::fs::write(p, format!("{text}\n"))?),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Runs a parsed command; `Ok(true)` means every check passed.
fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::Det(io) => {
            let doc: QMatrixDoc = serde_json::from_str(&read_input(&io.json)?)?;
            let det = moore_det(&doc.to_core()?, io.tol)?;
            emit(&io.out, &format!("{det:.14e}"))?;
            Ok(true)
        }
        Cmd::Normalize(io) => {
            let doc: FormDoc = serde_json::from_str(&read_input(&io.json)?)?;
            let f = doc.to_core()?;
            let s = normalize_real_2form(&f, io.tol)?;
            let residual = normal_form_residual(&f, &s)?;
            let report = NormalizeDoc::new(&s, residual);
            emit(&io.out, &serde_json::to_string_pretty(&report)?)?;
            Ok(residual <= io.tol)
        }
        Cmd::Ma { fields, point, tol, out } => {
            let nvars = 4 * fields.len();
            let mut us = Vec::with_capacity(fields.len());
            for path in &fields {
                let doc: FieldDoc = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                us.push(doc.to_core(nvars)?);
            }
            let x: Vec<f64> = serde_json::from_str(&point)?;
            let value = ma_mixed(&us, &x, tol)?;
            emit(&out, &format!("{value:.14e}"))?;
            Ok(true)
        }
        Cmd::Verify { suite, seed, cases, tol, n, eps, out } => {
            let opts = SuiteOpts { seed, cases, tol, n, eps };
            let report = run_suite(&suite, &opts).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown suite '{suite}'; expected one of {}, all",
                    SUITE_NAMES.join(", ")
                ))
            })?;
            emit(&out, &serde_json::to_string_pretty(&report)?)?;
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are successful terminations, not usage errors
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
