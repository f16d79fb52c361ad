//! Spec files, trace CSV and the `run` / `bench` verbs behind the
//! `liftpocs` binary.

pub mod bench;
pub mod problem;
pub mod spec;
pub mod trace_csv;

use std::io::Write;
use std::path::{Path, PathBuf};

pub use problem::{execute, Problem, RunReport};
pub use spec::{ProblemSpec, SpecError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(#[from] liftpocs::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("spec `{0}` has no [oracle] section")]
    NoOracle(String),
    #[error("no *.toml spec files in {0}")]
    EmptyBench(PathBuf),
}

/// Overrides for `run`.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub trace: Option<PathBuf>,
    pub oracle: bool,
    pub lambda: Option<f64>,
    pub max_iter: Option<usize>,
}

/// The `run` verb: solve, print the summary, write the trace on request.
pub fn run(spec_path: &Path, opts: &RunOptions, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut spec = ProblemSpec::load(spec_path)?;
    if let Some(l) = opts.lambda {
        spec.config.lambda = Some(l);
    }
    if let Some(m) = opts.max_iter {
        spec.config.max_iterations = Some(m);
    }
    let report = execute(spec, opts.oracle)?;
    let stdout_err = |source| CliError::Io { path: PathBuf::from("<stdout>"), source };
    report.write_summary(out).map_err(stdout_err)?;
    if let Some(path) = &opts.trace {
        trace_csv::emit_trace(report.trace(), report.dim, path)?;
        writeln!(out, "trace: {}", path.display()).map_err(stdout_err)?;
    }
    Ok(report.exit_code())
}
