//! `minind`: batch driver for the Kac–Moody induction engine.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage or validation error,
//! 3 truncation overflow.

mod cache;
mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use minind_core::Error;

use commands::{LeviModule, ModuleKind, Outcome};
use config::JobArgs;

#[derive(Debug, Parser)]
#[command(name = "minind", version, about = "Exact Kac-Moody weight modules and parabolic induction")]
struct Cli {
    #[command(flatten)]
    job: JobArgs,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Rank, symmetrizer and root multiplicities up to the height cutoff.
    AlgebraInfo,
    /// Positive roots with multiplicities.
    Roots,
    /// Per-offset dimensions of a module on the window.
    Character {
        #[arg(long, value_enum, default_value_t = ModuleKind::Simple)]
        module: ModuleKind,
        /// Levi module induced by the `ind-*` and `j-*` descriptors.
        #[arg(long, value_enum, default_value_t = LeviModule::Simple)]
        levi_module: LeviModule,
    },
    /// Dimension and rank tables of the induction functors.
    Induce {
        #[arg(long, value_enum, default_value_t = LeviModule::Simple)]
        levi_module: LeviModule,
        /// Include the canonical-map blocks.
        #[arg(long)]
        emit_matrix: bool,
    },
    /// Run a named suite, or `all`.
    Verify { suite: String },
    /// Certificate for the extension attached to one simple root.
    MinimalType {
        /// Label of the simple root.
        #[arg(long)]
        index: String,
    },
    /// Structure-constant tables in the versioned text format.
    DumpTables,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::TruncationOverflow { .. } => 3,
        Error::CharacterMismatch(_) | Error::NegativeMultiplicity { .. } | Error::NotActionClosed { .. } => 1,
        _ => 2,
    }
}

fn run(cli: &Cli) -> minind_core::Result<Outcome> {
    if let Verb::Verify { suite } = &cli.verb {
        return commands::verify_cmd(suite, cli.job.depth, cli.job.format);
    }
    let cfg = cli.job.config()?;
    match &cli.verb {
        Verb::AlgebraInfo => commands::algebra_info(&cfg),
        Verb::Roots => commands::roots(&cfg),
        Verb::Character { module, levi_module } => commands::character_cmd(&cfg, *module, *levi_module),
        Verb::Induce { levi_module, emit_matrix } => commands::induce_cmd(&cfg, *levi_module, *emit_matrix),
        Verb::MinimalType { index } => commands::minimal_type_cmd(&cfg, index),
        Verb::DumpTables => commands::dump_tables(&cfg),
        Verb::Verify { .. } => unreachable!("handled above"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
