use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use opcat::cli::{execute, Invocation, EXIT_ERROR};

/// Constructions and checks for finite operads and categories of operators.
#[derive(Parser)]
#[command(name = "opcat", version)]
struct Args {
    /// One of: validate, sqcup, gamma-star, diagram-operad, pullback-com,
    /// operator-cat, fibrous-check, iso, alg, universal-check, omega, phi-hom.
    command: String,
    /// Named arguments such as `K=I1` or `O=diag(I1,Com)`.
    #[arg(value_name = "KEY=EXPR")]
    args: Vec<String>,
    /// Arity bound N for all enumerations.
    #[arg(long)]
    arity: Option<usize>,
    /// Search budget.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the constructed object to FILE instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Graph-description output for constructed categories and forests.
    #[arg(long)]
    dot: bool,
    /// Append the elapsed time to the report.
    #[arg(long)]
    timing: bool,
    /// Size of the worker pool.
    #[arg(long)]
    threads: Option<usize>,
    /// Workspace file; may be repeated.
    #[arg(short = 'f', long = "file", value_name = "FILE")]
    files: Vec<PathBuf>,
    /// universal-check: corrupt one composite of the diagram operad first.
    #[arg(long)]
    corrupt: bool,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let mut inv = Invocation {
        command: a.command,
        arity: a.arity,
        budget: a.budget,
        out: a.out,
        dot: a.dot,
        timing: a.timing,
        threads: a.threads,
        files: a.files,
        corrupt: a.corrupt,
        ..Invocation::default()
    };
    for arg in &a.args {
        if let Err(e) = inv.push_arg(arg) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    }
    let outcome = execute(&inv);
    print!("{}", outcome.report);
    ExitCode::from(outcome.code as u8)
}
