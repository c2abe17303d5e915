use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use suzuki::commands;
use suzuki::report::VerifyOptions;
use suzuki::search::SearchOptions;
use suzuki::InputError;
use suzuki_core::elim::IndexCongruence;

#[derive(Parser)]
#[command(name = "suzuki", about = "Suzuki special-classes computations on permutation groups", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(clap::Args)]
struct SearchArgs {
    /// Resumable record of finished search tasks.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Rows fixed before the search splits into tasks.
    #[arg(long, default_value_t = 2)]
    depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes in canonical order.
    Classes { group: String },
    /// Character table in canonical class order.
    Chartab { group: String },
    /// Structure constant a_xyz for class labels or element names.
    Structconst { group: String, x: String, y: String, z: String },
    /// Special-classes pipeline: C, D, every B and its fragment.
    Suzuki {
        problem: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Elimination scripts.
    Elim {
        #[command(subcommand)]
        action: ElimAction,
    },
    /// Every reproduction check, one PASS/FAIL line each.
    VerifyPaper {
        /// Directory whose fixture files replace the shipped ones.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Assume only |G:H| ≡ 1 modulo this instead of the shipped congruence.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        index_modulus: Option<u64>,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum ElimAction {
    Run {
        script: String,
        #[command(flatten)]
        search: SearchArgs,
    },
}

fn search_opts(workers: usize, s: SearchArgs) -> SearchOptions {
    SearchOptions { workers, depth: s.depth, checkpoint: s.checkpoint }
}

/// Exit status 0 on success, 1 on a failed check, 2 on bad input.
fn run(cli: Cli) -> Result<bool, InputError> {
    let tsv = matches!(cli.format, Format::Tsv);
    match cli.command {
        Command::Classes { group } => {
            print!("{}", commands::classes(&group, tsv)?);
            Ok(true)
        }
        Command::Chartab { group } => {
            print!("{}", commands::chartab(&group, tsv)?);
            Ok(true)
        }
        Command::Structconst { group, x, y, z } => {
            let (text, ok) = commands::structconst(&group, &x, &y, &z)?;
            print!("{text}");
            Ok(ok)
        }
        Command::Suzuki { problem, out, search } => {
            print!("{}", commands::suzuki(&problem, &search_opts(cli.workers, search), out.as_deref(), tsv)?);
            Ok(true)
        }
        Command::Elim { action: ElimAction::Run { script, search } } => {
            let r = commands::elim_run(&script, &search_opts(cli.workers, search))?;
            print!("{}", r.render());
            Ok(r.is_conclusive())
        }
        Command::VerifyPaper { fixtures, index_modulus, out, search } => {
            let index_override = index_modulus.map(|modulus| IndexCongruence { modulus, residue: 1 % modulus });
            let opts =
                VerifyOptions { search: search_opts(cli.workers, search), index_override, ..VerifyOptions::default() };
            let report = commands::verify(fixtures.as_deref(), opts);
            let text = report.render();
            print!("{text}");
            for (name, t) in &report.timings {
                eprintln!("time {name}: {:.3} s", t.as_secs_f64());
            }
            if let Some(path) = out {
                std::fs::write(&path, &text)
                    .map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
            }
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
