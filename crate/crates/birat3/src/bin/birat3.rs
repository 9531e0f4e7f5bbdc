//! Job runner: read a JSON job document (file or stdin), execute it, and
//! print the deterministic JSON or DOT report on stdout.
//!
//! Exit codes: 0 success, 2 validation failure, 3 search budget exhausted.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use birat3::cli::{run, CliError, OutputFormat, Overrides};

/// Exact birational geometry of terminal threefold singularities: weighted
/// blow-ups, depth invariants, contraction links, and flop chart atlases,
/// driven by JSON job documents.
#[derive(Parser)]
#[command(name = "birat3", version)]
struct Args {
    /// Path to the job document; reads stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Node budget for depth searches (beats BIRAT3_BUDGET and the job
    /// document's options.budget).
    #[arg(long)]
    budget: Option<usize>,

    /// Output format for tree results: json or dot (beats options.format).
    #[arg(long)]
    format: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match read_input(&args.input) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match args.format.as_deref().map(OutputFormat::parse).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: --format: {e}");
            return ExitCode::from(2);
        }
    };
    let overrides = Overrides {
        budget: args.budget,
        format,
        threads: None,
    };
    match run(&input, &overrides) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_byte(&e))
        }
    }
}

fn exit_byte(e: &CliError) -> u8 {
    u8::try_from(e.exit_code()).unwrap_or(2)
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}
