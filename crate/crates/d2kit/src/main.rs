use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use d2kit::checks::CheckLevel;
use d2kit::cli::{gallery, parse, render, run, Format, JobError, Overrides, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "d2kit", version, about = "Exact analysis of depth-two ring extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a job file and print the report.
    Analyze {
        job: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, value_enum)]
        check_level: Option<CheckLevel>,
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// List the gallery, or print one gallery entry as a job file.
    Examples { name: Option<String> },
    /// Analyze with full checks; exits nonzero on any failure or refusal.
    Verify {
        job: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn load(path: &PathBuf, o: Overrides) -> Result<d2kit::cli::Job, JobError> {
    let text = std::fs::read_to_string(path).map_err(|e| JobError::new("", format!("cannot read {}: {e}", path.display())))?;
    parse(&text, o)
}

fn analyze(path: &PathBuf, o: Overrides, format: Format) -> ExitCode {
    match load(path, o) {
        Ok(job) => {
            let report = run(&job);
            print!("{}", render(&report, format));
            for (task, c) in report.failures() {
                eprintln!("{}: {} failed{}", task.name(), c.name, c.witness.as_ref().map(|w| format!(" at {w}")).unwrap_or_default());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("input error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze { job, seed, format, check_level, max_dim } => analyze(&job, Overrides { seed, check_level, max_dim }, format),
        Command::Verify { job, format } => analyze(&job, Overrides { check_level: Some(CheckLevel::Full), ..Default::default() }, format),
        Command::Examples { name: None } => {
            for n in gallery::names() {
                println!("{n:28} {}", gallery::describe(n).unwrap_or_default());
            }
            ExitCode::SUCCESS
        }
        Command::Examples { name: Some(n) } => match gallery::job(&n) {
            Some(spec) => {
                println!("{}", serde_json::to_string_pretty(&spec).expect("job serializes"));
                ExitCode::SUCCESS
            }
            None => {
                eprintln!("input error: unknown example {n:?}; known: {}", gallery::names().join(", "));
                ExitCode::from(EXIT_INPUT as u8)
            }
        },
    }
}
