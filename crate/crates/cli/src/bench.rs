//! `bench`: run every spec in a directory and tabulate oracle gaps.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::problem::execute;
use crate::spec::ProblemSpec;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub problem: String,
    pub solver: String,
    pub iterations: Option<usize>,
    pub gap: Option<f64>,
    pub pass: bool,
    pub note: String,
}

/// Spec files (`*.toml`) directly inside `dir`, sorted by path.
pub fn spec_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let io = |source| CliError::Io { path: dir.to_owned(), source };
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "toml") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// A row for one spec file. Specs with an `[oracle]` section pass when the
/// solver value is within the oracle tolerance; others pass when the solve
/// ends without an error.
pub fn bench_one(path: &Path) -> BenchRow {
    let fallback_name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let spec = match ProblemSpec::load(path) {
        Ok(s) => s,
        Err(e) => {
            return BenchRow {
                problem: fallback_name,
                solver: "-".into(),
                iterations: None,
                gap: None,
                pass: false,
                note: e.to_string(),
            }
        }
    };
    let with_oracle = spec.oracle.is_some();
    let solver = spec.solver.to_string();
    let name = spec.name.clone();
    let report = match execute(spec, with_oracle) {
        Ok(r) => r,
        Err(e) => {
            return BenchRow { problem: name, solver, iterations: None, gap: None, pass: false, note: e.to_string() }
        }
    };
    let (iterations, mut note, mut pass) = match &report.outcome {
        Ok(r) => (
            Some(r.iterations()),
            r.termination.to_string(),
            r.termination != liftpocs::Termination::DomainError,
        ),
        Err(e) => (None, e.error.to_string(), false),
    };
    let gap = match &report.oracle {
        Some(Ok(c)) => {
            pass &= c.passed();
            Some(c.gap)
        }
        Some(Err(e)) => {
            pass = false;
            note = format!("oracle: {e}");
            None
        }
        None => None,
    };
    BenchRow { problem: report.name, solver, iterations, gap, pass, note }
}

/// Runs all specs in `dir` (concurrently) and prints the table sorted by
/// problem name. Exit code 0 iff every row passes; an empty directory is an
/// error.
pub fn bench(dir: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let files = spec_files(dir)?;
    if files.is_empty() {
        return Err(CliError::EmptyBench(dir.to_owned()));
    }
    let mut rows: Vec<BenchRow> = std::thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|p| s.spawn(move || bench_one(p))).collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    });
    rows.sort_by(|a, b| a.problem.cmp(&b.problem).then_with(|| a.solver.cmp(&b.solver)));
    write_table(&rows, out).map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })?;
    Ok(if rows.iter().all(|r| r.pass) { 0 } else { 1 })
}

pub fn write_table(rows: &[BenchRow], out: &mut dyn Write) -> std::io::Result<()> {
    let width = rows.iter().map(|r| r.problem.len()).max().unwrap_or(0).max(7);
    writeln!(out, "{:<width$}  {:<11}  {:>10}  {:>10}  {:<4}  note", "problem", "solver", "iterations", "|df|", "ok")?;
    for r in rows {
        let iters = r.iterations.map_or("-".to_string(), |i| i.to_string());
        let gap = r.gap.map_or("-".to_string(), |g| format!("{g:.3e}"));
        let ok = if r.pass { "pass" } else { "FAIL" };
        writeln!(out, "{:<width$}  {:<11}  {:>10}  {:>10}  {:<4}  {}", r.problem, r.solver, iters, gap, ok, r.note)?;
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    writeln!(out, "{passed}/{} passed", rows.len())
}
