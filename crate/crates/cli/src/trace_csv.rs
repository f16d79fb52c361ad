//! Trace CSV: `iter,set,cost,base_0,...,base_{N-1},height`, numbers with 17
//! significant digits so a re-parse gives back the same bits.

use std::io::{BufRead, Write};
use std::path::Path;

use liftpocs::{IterationRecord, LiftedVector, SetLabel};

use crate::CliError;

pub fn header(dim: usize) -> String {
    let mut cols = vec!["iter".to_string(), "set".into(), "cost".into()];
    cols.extend((0..dim).map(|i| format!("base_{i}")));
    cols.push("height".into());
    cols.join(",")
}

pub fn write_trace(trace: &[IterationRecord], dim: usize, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{}", header(dim))?;
    for r in trace {
        write!(out, "{},{},{:.16e}", r.index, r.set, r.cost_value)?;
        for x in r.point.base() {
            write!(out, ",{x:.16e}")?;
        }
        writeln!(out, ",{:.16e}", r.point.height())?;
    }
    Ok(())
}

pub fn emit_trace(trace: &[IterationRecord], dim: usize, path: &Path) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_owned(), source };
    let file = std::fs::File::create(path).map_err(io)?;
    let mut out = std::io::BufWriter::new(file);
    write_trace(trace, dim, &mut out).map_err(io)?;
    out.flush().map_err(io)
}

#[derive(Debug, thiserror::Error)]
pub enum TraceParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn read_trace(input: impl BufRead) -> Result<Vec<IterationRecord>, TraceParseError> {
    let mut lines = input.lines();
    let bad = |line: usize, message: String| TraceParseError::Malformed { line, message };
    let head = lines.next().ok_or_else(|| bad(1, "missing header".into()))??;
    let cols: Vec<&str> = head.split(',').collect();
    if cols.len() < 5 || cols[..3] != ["iter", "set", "cost"] || cols.last() != Some(&"height") {
        return Err(bad(1, format!("unexpected header `{head}`")));
    }
    let dim = cols.len() - 4;
    if head != header(dim) {
        return Err(bad(1, format!("unexpected header `{head}`")));
    }
    let mut out = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        let no = k + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != dim + 4 {
            return Err(bad(no, format!("expected {} fields, found {}", dim + 4, fields.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| bad(no, format!("`{s}`: {e}")));
        let index = fields[0].parse::<usize>().map_err(|e| bad(no, format!("iter: {e}")))?;
        let set = SetLabel::parse(fields[1]).ok_or_else(|| bad(no, format!("unknown set `{}`", fields[1])))?;
        let cost_value = num(fields[2])?;
        let components = fields[3..].iter().map(|s| num(s)).collect::<Result<Vec<_>, _>>()?;
        let point = LiftedVector::from_components(&components).map_err(|e| bad(no, e.to_string()))?;
        out.push(IterationRecord { index, point, set, cost_value });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(index: usize, set: SetLabel, base: Vec<f64>, height: f64) -> IterationRecord {
        IterationRecord { index, point: LiftedVector::new(base, height).unwrap(), set, cost_value: height.abs() }
    }

    #[test]
    fn line_counts() {
        let trace = vec![
            record(0, SetLabel::Epigraph, vec![0.1, 2.0], 9.0),
            record(1, SetLabel::LevelSet, vec![0.1, 2.0], 0.0),
            record(2, SetLabel::Constraint(2), vec![1.0 / 3.0, -2.5e-300], 1e300),
        ];
        let mut buf = Vec::new();
        write_trace(&trace, 2, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("iter,set,cost,base_0,base_1,height\n"));
        assert_eq!(read_trace(text.as_bytes()).unwrap(), trace);

        let mut empty = Vec::new();
        write_trace(&[], 3, &mut empty).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap(), "iter,set,cost,base_0,base_1,base_2,height\n");
    }

    #[test]
    fn malformed_rows_name_the_line() {
        let text = "iter,set,cost,base_0,height\n0,epigraph,1,2,3\n1,nowhere,1,2,3\n";
        let err = read_trace(text.as_bytes()).unwrap_err().to_string();
        assert!(err.starts_with("line 3"), "{err}");
    }
}
