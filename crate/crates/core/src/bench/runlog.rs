//! Convergence logs of optimization runs.

use std::io::{BufRead, Write};

use crate::model::{format_value, OutputVector};

#[derive(Debug, Clone, PartialEq)]
pub struct LogEntry {
    /// Call index, counting every evaluation.
    pub eval: usize,
    /// Evaluations charged to the budget so far, this one included.
    pub counted: usize,
    pub y: OutputVector,
    pub feasible: bool,
    /// Best feasible first objective so far; `+inf` before the first one.
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunLog {
    pub problem: u32,
    pub solver: String,
    pub start: usize,
    pub n: usize,
    pub p: usize,
    pub entries: Vec<LogEntry>,
    pub aborted: bool,
}

impl RunLog {
    pub fn new(problem: u32, solver: &str, start: usize, n: usize, p: usize) -> Self {
        RunLog {
            problem,
            solver: solver.to_string(),
            start,
            n,
            p,
            entries: Vec::new(),
            aborted: false,
        }
    }

    /// Key under which profiles treat this run as one problem.
    pub fn problem_key(&self) -> String {
        format!("{}#{}", self.problem, self.start)
    }

    pub fn best(&self) -> f64 {
        self.entries.last().map_or(f64::INFINITY, |e| e.best)
    }

    pub fn counted(&self) -> usize {
        self.entries.last().map_or(0, |e| e.counted)
    }

    /// Record an evaluation and return its entry.
    pub fn record(&mut self, y: OutputVector) -> &LogEntry {
        let feasible = y.is_feasible();
        let prev_best = self.best();
        let best = if feasible && y.cnt_eval { prev_best.min(y.objectives[0]) } else { prev_best };
        let counted = self.counted() + usize::from(y.cnt_eval);
        self.entries.push(LogEntry {
            eval: self.entries.len() + 1,
            counted,
            y,
            feasible,
            best,
        });
        self.entries.last().expect("just pushed")
    }
}

pub const CSV_HEADER: &str = "problem,solver,start,n,p,eval,counted,cnt_eval,feasible,best,y";

fn fmt_best(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format_value(v)
    }
}

/// Write logs as CSV; aborted runs end with an `# aborted` line.
pub fn write_logs<W: Write>(mut out: W, logs: &[RunLog]) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for log in logs {
        for e in &log.entries {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                log.problem,
                log.solver,
                log.start,
                log.n,
                log.p,
                e.eval,
                e.counted,
                e.y.cnt_eval,
                e.feasible,
                fmt_best(e.best),
                e.y
            )?;
        }
        if log.aborted {
            writeln!(out, "# aborted,{},{},{}", log.problem, log.solver, log.start)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("run log line {line}: {reason}")]
pub struct LogParseError {
    pub line: usize,
    pub reason: String,
}

pub fn read_logs<R: BufRead>(input: R) -> Result<Vec<RunLog>, LogParseError> {
    let mut logs: Vec<RunLog> = Vec::new();
    for (no, line) in input.lines().enumerate() {
        let err = |reason: String| LogParseError { line: no + 1, reason };
        let line = line.map_err(|e| err(e.to_string()))?;
        if line == CSV_HEADER || line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# aborted,") {
            let f: Vec<&str> = rest.split(',').collect();
            if let Some(log) = logs.iter_mut().rev().find(|l| {
                f.len() == 3 && l.problem.to_string() == f[0] && l.solver == f[1] && l.start.to_string() == f[2]
            }) {
                log.aborted = true;
            }
            continue;
        }
        let f: Vec<&str> = line.splitn(11, ',').collect();
        if f.len() != 11 {
            return Err(err(format!("expected 11 fields, found {}", f.len())));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad integer `{s}`")));
        let problem = f[0].parse::<u32>().map_err(|_| err(format!("bad problem `{}`", f[0])))?;
        let (start, n, p) = (num(f[2])?, num(f[3])?, num(f[4])?);
        let mut y = OutputVector::parse(f[10], p).map_err(|e| err(e.to_string()))?;
        y.cnt_eval = f[7] == "true";
        let best = if f[9] == "inf" {
            f64::INFINITY
        } else {
            f[9].parse().map_err(|_| err(format!("bad best `{}`", f[9])))?
        };
        let entry = LogEntry {
            eval: num(f[5])?,
            counted: num(f[6])?,
            y,
            feasible: f[8] == "true",
            best,
        };
        let same = logs
            .last()
            .is_some_and(|l| l.problem == problem && l.solver == f[1] && l.start == start);
        if !same {
            logs.push(RunLog::new(problem, f[1], start, n, p));
        }
        logs.last_mut().expect("present").entries.push(entry);
    }
    Ok(logs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(f: f64, c: f64, ok: bool) -> OutputVector {
        OutputVector {
            objectives: vec![f],
            constraints: vec![c],
            cnt_eval: ok,
        }
    }

    #[test]
    fn best_and_budget() {
        let mut log = RunLog::new(1, "rs", 0, 2, 1);
        log.record(y(5.0, 1.0, true));
        assert_eq!(log.best(), f64::INFINITY);
        log.record(y(4.0, -1.0, true));
        log.record(y(1e20, 1e20, false));
        log.record(y(6.0, -1.0, true));
        assert_eq!(log.best(), 4.0);
        assert_eq!(log.counted(), 3);
        assert_eq!(log.entries[3].eval, 4);
    }

    #[test]
    fn csv_round_trip() {
        let mut a = RunLog::new(6, "cs", 2, 5, 1);
        a.record(y(1.5e7, -3.0, true));
        a.record(y(1.2e7, 0.5, true));
        a.aborted = true;
        let mut b = RunLog::new(6, "rs", 2, 5, 1);
        b.record(y(1e20, 1e20, false));
        let mut buf = Vec::new();
        write_logs(&mut buf, &[a.clone(), b.clone()]).unwrap();
        let back = read_logs(&buf[..]).unwrap();
        assert_eq!(back, vec![a, b]);
    }
}
