use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use brauerkit::acceptance;
use brauerkit::commands::{self, Budget, QfAction};
use brauerkit::{CliError, CommandReport, ErrorReport, Outcome};
use clap::{Parser, Subcommand};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "brauerkit", version, about = "Exact computations with Brauer classes, quadratic forms and group cohomology")]
struct Cli {
    /// Fixes randomized sampling; seeded runs report elapsed_ms = 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert symbol (a, b)_v.
    Hilbert {
        #[arg(long)]
        place: String,
        #[arg(allow_negative_numbers = true)]
        a: String,
        #[arg(allow_negative_numbers = true)]
        b: String,
    },
    /// Quaternion algebras (a, b) over Q.
    Quat {
        #[command(subcommand)]
        action: QuatCommand,
    },
    /// Quadratic forms over Q, given as a diagonal list or a Gram matrix file.
    Qf {
        #[command(subcommand)]
        action: QfCommand,
    },
    /// H^i(G, M) from the standard cochain complex.
    Cohomology {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// The permutation module Z[G/H].
    PermModule {
        #[arg(long)]
        group: PathBuf,
        /// Comma-separated element indices of H.
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    LindReichardt {
        #[command(subcommand)]
        action: LindReichardtCommand,
    },
    Bogomolov {
        #[command(subcommand)]
        action: BogomolovCommand,
    },
    /// Runs the acceptance criteria.
    Selftest {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Debug, Subcommand)]
enum QuatCommand {
    Invariants {
        #[arg(allow_negative_numbers = true)]
        a: String,
        #[arg(allow_negative_numbers = true)]
        b: String,
    },
    Split {
        #[arg(allow_negative_numbers = true)]
        a: String,
        #[arg(allow_negative_numbers = true)]
        b: String,
        /// Include the descent trace.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug, clap::Args)]
struct FormArgs {
    /// Diagonal entries, e.g. "1,-2,-7".
    #[arg(allow_hyphen_values = true)]
    diagonal: Option<String>,
    #[arg(long, conflicts_with = "diagonal")]
    gram: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum QfCommand {
    Diag(FormArgs),
    Disc(FormArgs),
    Clifford(FormArgs),
    Isotropic(FormArgs),
}

#[derive(Debug, Subcommand)]
enum LindReichardtCommand {
    Verify {
        #[arg(long, default_value_t = 100)]
        prime_bound: u64,
        #[arg(long, default_value_t = 10_000)]
        height: u32,
    },
}

#[derive(Debug, Subcommand)]
enum BogomolovCommand {
    Verify {
        #[arg(long, default_value_t = 3)]
        prime: u32,
        /// Coordinates on e12, e13, e14, e23, e24, e34.
        #[arg(long, default_value = "1,0,0,0,0,1", allow_hyphen_values = true)]
        z: String,
    },
}

fn name(command: &Command) -> &'static str {
    match command {
        Command::Hilbert { .. } => "hilbert",
        Command::Quat { action: QuatCommand::Invariants { .. } } => "quat invariants",
        Command::Quat { action: QuatCommand::Split { .. } } => "quat split",
        Command::Qf { action: QfCommand::Diag(_) } => "qf diag",
        Command::Qf { action: QfCommand::Disc(_) } => "qf disc",
        Command::Qf { action: QfCommand::Clifford(_) } => "qf clifford",
        Command::Qf { action: QfCommand::Isotropic(_) } => "qf isotropic",
        Command::Cohomology { .. } => "cohomology",
        Command::PermModule { .. } => "perm-module",
        Command::LindReichardt { .. } => "lind-reichardt verify",
        Command::Bogomolov { .. } => "bogomolov verify",
        Command::Selftest { .. } => "selftest",
    }
}

fn selftest(only: Option<u8>, seed: u64) -> Result<Outcome, CliError> {
    let ids: Vec<u8> = match only {
        Some(id) if acceptance::CRITERIA.iter().any(|(i, _)| *i == id) => vec![id],
        Some(id) => return Err(CliError::Parse(format!("no criterion {id}"))),
        None => acceptance::CRITERIA.iter().map(|(i, _)| *i).collect(),
    };
    let mut rows = Vec::new();
    let mut passed = 0;
    for id in ids {
        let out = acceptance::run(id, seed);
        eprintln!("{}", out.line());
        passed += out.passed as u64;
        rows.push(json!({ "id": out.id, "name": out.name, "passed": out.passed, "detail": out.detail }));
    }
    let total = rows.len();
    Ok(Outcome {
        inputs: json!({ "seed": seed, "only": only }),
        result: json!({ "criteria": rows, "passed": passed, "total": total }),
        checks_passed: passed,
    })
}

fn dispatch(command: Command, seed: Option<u64>) -> Result<Outcome, CliError> {
    let budget = Budget::from_env()?;
    match command {
        Command::Hilbert { place, a, b } => commands::hilbert(&place, &a, &b),
        Command::Quat { action } => match action {
            QuatCommand::Invariants { a, b } => commands::quat_invariants(&a, &b),
            QuatCommand::Split { a, b, trace } => commands::quat_split(&a, &b, trace, budget),
        },
        Command::Qf { action } => {
            let (kind, args) = match action {
                QfCommand::Diag(f) => (QfAction::Diag, f),
                QfCommand::Disc(f) => (QfAction::Disc, f),
                QfCommand::Clifford(f) => (QfAction::Clifford, f),
                QfCommand::Isotropic(f) => (QfAction::Isotropic, f),
            };
            let form = commands::load_form(args.diagonal.as_deref(), args.gram.as_deref())?;
            commands::qf(kind, &form, budget)
        }
        Command::Cohomology { group, module, degree } => commands::cohomology_cmd(&group, &module, degree),
        Command::PermModule { group, subgroup, degree } => commands::perm_module(&group, &subgroup, degree),
        Command::LindReichardt { action: LindReichardtCommand::Verify { prime_bound, height } } => {
            commands::lind_reichardt(prime_bound, height)
        }
        Command::Bogomolov { action: BogomolovCommand::Verify { prime, z } } => commands::bogomolov(prime, &z),
        Command::Selftest { only } => selftest(only, seed.unwrap_or_else(rand::random)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let command = name(&cli.command);
    let start = Instant::now();
    match dispatch(cli.command, cli.seed) {
        Ok(out) => {
            let elapsed_ms = if cli.seed.is_some() { 0 } else { start.elapsed().as_millis() as u64 };
            let report = CommandReport {
                command: command.to_string(),
                inputs: out.inputs,
                result: out.result,
                checks_passed: out.checks_passed,
                elapsed_ms,
            };
            println!("{}", serde_json::to_string(&report).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("brauerkit {command}: {err}");
            println!("{}", serde_json::to_string(&ErrorReport::new(command, &err)).expect("serializable"));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
