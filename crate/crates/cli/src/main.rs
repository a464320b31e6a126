use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dp6_cli::commands::{self, BurniatAction};
use dp6_cli::{RunManifest, EXIT_INPUT_ERROR};
use dp6_core::DivClass;

#[derive(Parser)]
#[command(
    name = "dp6",
    version,
    about = "Exact checks on the degree-6 del Pezzo surface and Burniat surfaces"
)]
struct Cli {
    /// Render a table instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    human: bool,
    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Burniat arrangement pipeline.
    Burniat {
        #[command(subcommand)]
        action: BurniatCommand,
    },
    /// h^0 of a class a*l + b1*e1 + b2*e2 + b3*e3.
    H0 {
        #[arg(required = true, num_args = 4, value_names = ["A", "B1", "B2", "B3"], allow_negative_numbers = true)]
        class: Vec<i32>,
    },
    /// (h0, h1, h2, chi) of a class.
    Cohomology {
        #[arg(required = true, num_args = 4, value_names = ["A", "B1", "B2", "B3"], allow_negative_numbers = true)]
        class: Vec<i32>,
    },
    /// Invariants of a double cover datum or bidouble branch data (JSON file).
    CoverInvariants { file: PathBuf },
    /// The arithmetic of the case analysis.
    EnumerateCases,
    /// Every reproducible check, with recorded constants.
    VerifyPaper,
}

#[derive(Subcommand)]
enum BurniatCommand {
    /// Branch data and invariants.
    Build {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Arrangement diagnostics only.
    Validate {
        #[arg(long)]
        arrangement: PathBuf,
    },
    /// Invariant report.
    Invariants {
        #[arg(long)]
        arrangement: PathBuf,
    },
}

fn class(v: &[i32]) -> DivClass {
    DivClass::new(v[0], v[1], v[2], v[3])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Burniat { action } => {
            let (path, action) = match action {
                BurniatCommand::Build { arrangement } => (arrangement, BurniatAction::Build),
                BurniatCommand::Validate { arrangement } => (arrangement, BurniatAction::Validate),
                BurniatCommand::Invariants { arrangement } => {
                    (arrangement, BurniatAction::Invariants)
                }
            };
            commands::cmd_burniat(path, action)
        }
        Command::H0 { class: c } => Ok(commands::cmd_h0(class(c))),
        Command::Cohomology { class: c } => Ok(commands::cmd_cohomology(class(c))),
        Command::CoverInvariants { file } => commands::cmd_cover_invariants(file),
        Command::EnumerateCases => Ok(commands::cmd_enumerate_cases()),
        Command::VerifyPaper => Ok(commands::cmd_verify_paper()),
    };
    match result {
        Ok(manifest) => emit(&manifest, cli.human),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}

fn emit(manifest: &RunManifest, human: bool) -> ExitCode {
    let text = if human {
        manifest.to_human()
    } else {
        manifest.to_json() + "\n"
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::from(manifest.exit_code() as u8)
}
