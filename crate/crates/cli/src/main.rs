use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use liftpocs_cli::{bench::bench, run, RunOptions};

#[derive(Parser)]
#[command(name = "liftpocs", version, about = "Minimization by lifting: run problem specs and benchmark them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one spec file and print a summary.
    Run {
        spec: PathBuf,
        /// Write the iteration trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Compare against the grid oracle declared in the spec.
        #[arg(long)]
        oracle: bool,
        /// Override the relaxation parameter.
        #[arg(long)]
        lambda: Option<f64>,
        /// Override the projection-step cap.
        #[arg(long = "max-iter")]
        max_iter: Option<usize>,
    },
    /// Run every *.toml spec in a directory and print a comparison table.
    Bench { dir: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Run { spec, trace, oracle, lambda, max_iter } => {
            run(&spec, &RunOptions { trace, oracle, lambda, max_iter }, &mut stdout)
        }
        Command::Bench { dir } => bench(&dir, &mut stdout),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
