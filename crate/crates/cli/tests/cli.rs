use std::path::{Path, PathBuf};
use std::process::Command;

use liftpocs_cli::trace_csv::read_trace;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_liftpocs"))
}

fn specs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("specs")
}

fn field<'a>(stdout: &'a str, key: &str) -> &'a str {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{stdout}"))
}

fn first_coordinate(stdout: &str) -> f64 {
    field(stdout, "minimizer").trim_matches(|c| c == '[' || c == ']').split(',').next().unwrap().trim().parse().unwrap()
}

#[test]
fn run_parabola_converges() {
    let out = bin().arg("run").arg(specs().join("parabola_epigraph.toml")).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert_eq!(field(&stdout, "termination"), "converged");
    assert!((first_coordinate(&stdout) - 3.0).abs() < 1e-2);
}

#[test]
fn run_square_root_nonconvex_function() {
    let out = bin().arg("run").arg(specs().join("lp_half_nonconvex_10.toml")).arg("--oracle").output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!((first_coordinate(&stdout) - 2.0).abs() < 1e-3);
    assert!(field(&stdout, "oracle").starts_with("pass"));
}

#[test]
fn forced_cap_exits_two_and_trace_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let out = bin()
        .arg("run")
        .arg(specs().join("l1_hyperplane.toml"))
        .args(["--max-iter", "1", "--trace"])
        .arg(&trace)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(2), "{stdout}");
    assert_eq!(field(&stdout, "termination"), "iteration_cap");
    let text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(text.lines().next().unwrap(), "iter,set,cost,base_0,base_1,base_2,height");
    let records = read_trace(text.as_bytes()).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0].point.base(), &[2.0, -1.0, 4.0]);
}

#[test]
fn lambda_override_is_validated() {
    let out = bin().arg("run").arg(specs().join("l1_epigraph.toml")).args(["--lambda", "2.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("lambda"));
}

#[test]
fn malformed_spec_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "name = \"bad\"\nsolver = \"epigraph\"\ninitial_point = [0.0]\n[cost]\nname = \"l1\"\ndim = -3\n").unwrap();
    let out = bin().arg("run").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 6") || stderr.contains("dim"), "{stderr}");
}

#[test]
fn bench_failures_and_empty_directories() {
    let empty = tempfile::tempdir().unwrap();
    let out = bin().arg("bench").arg(empty.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("no *.toml"));

    // the parabola spec with a cap too small to get near the vertex
    let dir = tempfile::tempdir().unwrap();
    let spec = std::fs::read_to_string(specs().join("parabola_epigraph.toml")).unwrap();
    std::fs::write(dir.path().join("capped.toml"), spec.replace("max_iterations = 2000000", "max_iterations = 4")).unwrap();
    std::fs::write(dir.path().join("ok.toml"), std::fs::read_to_string(specs().join("l1_epigraph.toml")).unwrap())
        .unwrap();
    let out = bin().arg("bench").arg(dir.path()).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(1), "{stdout}");
    let rows: Vec<&str> = stdout.lines().collect();
    assert!(rows[1].starts_with("l1_epigraph") && rows[1].contains("pass"), "{stdout}");
    assert!(rows[2].starts_with("parabola_epigraph") && rows[2].contains("FAIL"), "{stdout}");
    assert_eq!(rows[3], "1/2 passed");
}

#[test]
fn bench_shipped_specs_all_pass() {
    let out = bin().arg("bench").arg(specs()).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    let total = std::fs::read_dir(specs()).unwrap().count();
    assert!(stdout.contains(&format!("{total}/{total} passed")), "{stdout}");
    assert!(!stdout.contains("FAIL"));
}
