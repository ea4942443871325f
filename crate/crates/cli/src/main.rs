mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use thiserror::Error;

use args::{Cli, FamilyAction, IsotopyAction, KnuthAction, Verb};

const THREADS_VAR: &str = "SEMIFIELD_LAB_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] semifield_lab::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Usage(_) => "UsageError",
            CliError::Io(_) => "IoError",
        }
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    /// Zero-divisor witness, when the error has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_enc: Option<u64>,
}

#[derive(Serialize)]
struct Failure {
    ok: bool,
    /// Present for `validate`, whose verdict is the failure itself.
    #[serde(skip_serializing_if = "Option::is_none")]
    valid: Option<bool>,
    error: ErrorBody,
}

#[derive(Serialize)]
struct Success<T> {
    ok: bool,
    #[serde(flatten)]
    body: T,
}

fn render<T: Serialize>(doc: &T, compact: bool) -> String {
    let text = if compact {
        serde_json::to_string(doc)
    } else {
        serde_json::to_string_pretty(doc)
    };
    text.expect("output documents serialize")
}

fn emit<T: Serialize>(result: Result<T, CliError>, compact: bool, is_validate: bool) -> ExitCode {
    match result {
        Ok(body) => {
            println!("{}", render(&Success { ok: true, body }, compact));
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (witness, witness_enc) = match &e {
                CliError::Lib(semifield_lab::Error::ZeroDivisor { witness, enc }) => {
                    (Some(witness.clone()), Some(*enc))
                }
                _ => (None, None),
            };
            let failure = Failure {
                ok: false,
                valid: is_validate.then_some(false),
                error: ErrorBody {
                    kind: e.kind(),
                    message: e.to_string(),
                    witness,
                    witness_enc,
                },
            };
            println!("{}", render(&failure, compact));
            ExitCode::FAILURE
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_VAR} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // help and version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let compact = std::env::args().any(|a| a == "--compact");
            return emit::<()>(
                Err(CliError::Usage(e.to_string().trim_end().to_string())),
                compact,
                false,
            );
        }
    };
    let compact = cli.compact;
    if let Err(e) = configure_threads() {
        return emit::<()>(Err(e), compact, false);
    }
    match &cli.verb {
        Verb::Field(a) => emit(commands::field(a), compact, false),
        Verb::Family {
            action: FamilyAction::Build(a),
        } => emit(commands::family_build(a), compact, false),
        Verb::Validate { input } => emit(commands::validate(input), compact, true),
        Verb::Nuclei { input, oracle, e } => {
            emit(commands::nuclei(input, *oracle, *e), compact, false)
        }
        Verb::Knuth {
            action: KnuthAction::Orbit { input },
        } => emit(commands::knuth_orbit(input), compact, false),
        Verb::Isotopy {
            action:
                IsotopyAction::Compare {
                    a,
                    b,
                    brute,
                    budget,
                },
        } => emit(
            commands::isotopy_compare(a, b, *brute, *budget),
            compact,
            false,
        ),
        Verb::Table { family, cap } => {
            emit(commands::table(family.as_deref(), cap), compact, false)
        }
    }
}
