//! The `solar` command line.
//!
//! ```text
//! solar -h                 usage and instance list
//! solar -h <id>            variables, start point and outputs of an instance
//! solar <id> <file> [-seed=S|diff] [-rep=R] [-fid=F] [-v]
//! solar -check             compare a frozen case matrix with golden/check.txt
//! ```

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::evaluator::{evaluate, spec_or_err, EvalError};
use crate::instances::{all_specs, instance_spec, OutputClass};
use crate::model::{format_value, DesignPoint, EvalOptions, Replications, VarKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Golden evaluations, regenerated with the `write_golden` example.
pub const GOLDEN_CHECK: &str = include_str!("../golden/check.txt");

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum UsageError {
    #[error("{0}")]
    Message(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn usage_err(msg: impl Into<String>) -> UsageError {
    UsageError::Message(msg.into())
}

pub fn usage() -> String {
    let mut s = String::new();
    s.push_str("usage:\n");
    s.push_str("  solar -h [id]            help, or details of instance id\n");
    s.push_str("  solar <id> <file> [opts] evaluate every row of file\n");
    s.push_str("  solar -check             verify against the golden evaluations\n\n");
    s.push_str("options:\n");
    s.push_str("  -seed=S    base seed, a non-negative integer or `diff` (default 0)\n");
    s.push_str("  -rep=R     replications: integer >= 1, or r in (0,1) for the Gauss rule (default 1)\n");
    s.push_str("  -fid=F     fidelity in [0,1], multifidelity instances only (default 1)\n");
    s.push_str("  -v         append cnt_eval and the seed used to every line\n\n");
    s.push_str("instances:\n");
    for spec in all_specs() {
        let _ = writeln!(
            s,
            "  {:>2}  {:<9} n={:<2} p={} m={:<2} {}",
            spec.id,
            spec.name,
            spec.n(),
            spec.p,
            spec.m(),
            spec.title
        );
    }
    s
}

fn kind_name(k: VarKind) -> &'static str {
    match k {
        VarKind::Continuous => "cont",
        VarKind::Integer => "int",
        VarKind::Categorical => "cat",
    }
}

pub fn instance_help(id: u32) -> Result<String, UsageError> {
    let spec = spec_or_err(id)?;
    let mut s = String::new();
    let _ = writeln!(s, "{}: {}", spec.name, spec.title);
    let _ = writeln!(
        s,
        "n={} p={} m={} multifidelity={} window={} h from day {}\n",
        spec.n(),
        spec.p,
        spec.m(),
        if spec.multifidelity { "yes" } else { "no" },
        spec.window.hours,
        spec.window.day
    );
    let _ = writeln!(s, "variables:");
    for (v, x0) in spec.variables.iter().zip(&spec.x0.coords) {
        let _ = writeln!(
            s,
            "  x{:<2} {:<14} {:<4} [{}, {}] {:<7} x0={}  {}",
            v.index,
            v.symbol,
            kind_name(v.kind),
            format_value(v.lower),
            if v.upper.is_infinite() { "inf".to_string() } else { format_value(v.upper) },
            v.unit,
            format_value(*x0),
            v.description
        );
    }
    let _ = writeln!(s, "\noutputs:");
    for (k, o) in spec.outputs.iter().enumerate() {
        let class = match o.class {
            OutputClass::Apriori => "a priori",
            OutputClass::Deterministic => "deterministic",
            OutputClass::Stochastic => "stochastic",
        };
        let _ = writeln!(s, "  {:<4} {:<13} {}", spec.label(k), class, o.description);
    }
    let x0: Vec<String> = spec.x0.coords.iter().map(|v| format_value(*v)).collect();
    let _ = writeln!(s, "\nstart point: {}", x0.join(" "));
    Ok(s)
}

/// Rows of whitespace-separated numbers; `#` starts a comment.
pub fn parse_rows(text: &str, n: usize) -> Result<Vec<DesignPoint>, UsageError> {
    let mut rows = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let vals = body
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| usage_err(format!("line {}: malformed number `{t}`", no + 1))))
            .collect::<Result<Vec<f64>, _>>()?;
        if vals.len() != n {
            return Err(usage_err(format!("line {}: expected {n} values, found {}", no + 1, vals.len())));
        }
        rows.push(DesignPoint::new(vals));
    }
    if rows.is_empty() {
        return Err(usage_err("input file holds no point"));
    }
    Ok(rows)
}

/// Seed given as an integer or `diff`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedArg {
    Fixed(u64),
    Diff,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalArgs {
    pub id: u32,
    pub file: String,
    pub seed: SeedArg,
    pub replications: Replications,
    pub fidelity: f64,
    pub fidelity_given: bool,
    pub verbose: bool,
}

pub fn parse_eval_args(args: &[String]) -> Result<EvalArgs, UsageError> {
    let id: u32 = args[0].parse().map_err(|_| usage_err(format!("unknown command `{}`", args[0])))?;
    spec_or_err(id)?;
    let file = args.get(1).ok_or_else(|| usage_err("missing input file"))?.clone();
    let mut out = EvalArgs {
        id,
        file,
        seed: SeedArg::Fixed(0),
        replications: Replications::Fixed(1),
        fidelity: 1.0,
        fidelity_given: false,
        verbose: false,
    };
    for a in &args[2..] {
        if let Some(v) = a.strip_prefix("-seed=") {
            out.seed = if v == "diff" {
                SeedArg::Diff
            } else {
                SeedArg::Fixed(v.parse().map_err(|_| usage_err(format!("bad seed `{v}`")))?)
            };
        } else if let Some(v) = a.strip_prefix("-rep=") {
            let r: f64 = v.parse().map_err(|_| usage_err(format!("bad replication count `{v}`")))?;
            out.replications = Replications::from_value(r).map_err(|e| usage_err(e.to_string()))?;
        } else if let Some(v) = a.strip_prefix("-fid=") {
            let f: f64 = v.parse().map_err(|_| usage_err(format!("bad fidelity `{v}`")))?;
            if !(0.0..=1.0).contains(&f) {
                return Err(usage_err(format!("fidelity must lie in [0,1], got {v}")));
            }
            out.fidelity = f;
            out.fidelity_given = true;
        } else if a == "-v" {
            out.verbose = true;
        } else {
            return Err(usage_err(format!("unknown option `{a}`")));
        }
    }
    let spec = instance_spec(id).expect("checked above");
    if out.fidelity_given && !spec.multifidelity {
        return Err(EvalError::Fidelity(id).into());
    }
    Ok(out)
}

fn entropy_seed() -> u64 {
    use std::hash::{BuildHasher, Hasher};
    let mut h = std::collections::hash_map::RandomState::new().build_hasher();
    h.write_u128(
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos())
            .unwrap_or(0),
    );
    h.finish() >> 1
}

/// Evaluate every row and return the output lines in input order.
pub fn evaluate_rows(args: &EvalArgs, rows: &[DesignPoint], seed: u64) -> Result<Vec<String>, UsageError> {
    let opts = EvalOptions::new(seed, args.replications, args.fidelity).map_err(|e| usage_err(e.to_string()))?;
    rows.par_iter()
        .map(|x| {
            let r = evaluate(args.id, x, &opts)?;
            let mut line = r.y.to_string();
            if args.verbose {
                let _ = write!(line, " cnt_eval={} seed={seed}", r.cnt_eval);
            }
            Ok(line)
        })
        .collect()
}

/// One frozen `-check` case.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckCase {
    pub name: String,
    pub id: u32,
    pub x: DesignPoint,
    pub seed: u64,
    pub replications: u32,
    pub fidelity: f64,
}

/// Start points of every instance, plus replicated, perturbed and
/// failing points.
pub fn check_cases() -> Vec<CheckCase> {
    let mut v = Vec::new();
    for spec in all_specs() {
        let fid = if spec.multifidelity { 0.25 } else { 1.0 };
        let case = |name: &str, x: DesignPoint, seed, reps| CheckCase {
            name: format!("{}-{name}", spec.name),
            id: spec.id,
            x,
            seed,
            replications: reps,
            fidelity: fid,
        };
        v.push(case("x0", spec.x0.clone(), 0, 1));
        if spec.noise != crate::simulation::NoiseModel::NONE {
            v.push(case("x0-rep3", spec.x0.clone(), 7, 3));
        }
        // Non-integer value at the first discrete index, or a value out of
        // bounds when every variable is continuous.
        let mut bad = spec.x0.clone();
        match spec.variables.iter().position(|s| s.kind != VarKind::Continuous) {
            Some(i) => bad.coords[i] += 0.5,
            None => bad.coords[0] = spec.variables[0].upper + 1.0,
        }
        v.push(case("invalid", bad, 0, 1));
    }
    v
}

fn x_digest(x: &DesignPoint) -> String {
    let text: Vec<String> = x.coords.iter().map(|v| format!("{:016x}", v.to_bits())).collect();
    let d = Sha256::digest(text.join(" ").as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn prices_digest() -> String {
    let d = Sha256::digest(crate::data::PRICES_CSV.as_bytes());
    d.iter().map(|b| format!("{b:02x}")).collect()
}

/// `case_id id seed rep fid sha256(x) v1_hex v2_hex ...`
pub fn check_line(c: &CheckCase) -> String {
    let opts = EvalOptions::default()
        .with_seed(c.seed)
        .with_reps(c.replications)
        .with_fidelity(c.fidelity);
    let r = evaluate(c.id, &c.x, &opts).expect("check cases are well formed");
    let mut line = format!(
        "{} {} {} {} {} {}",
        c.name,
        c.id,
        c.seed,
        c.replications,
        format_value(c.fidelity),
        x_digest(&c.x)
    );
    for v in r.y.values() {
        let _ = write!(line, " {:016x}", v.to_bits());
    }
    line
}

/// Full golden file contents.
pub fn golden_check_file() -> String {
    let mut s = format!("# prices_sha256 {}\n", prices_digest());
    let lines: Vec<String> = check_cases().par_iter().map(check_line).collect();
    for l in lines {
        s.push_str(&l);
        s.push('\n');
    }
    s
}

fn run_check(golden: &str, out: &mut dyn Write) -> std::io::Result<i32> {
    let mut failed = 0;
    let mut expected = golden.lines().filter(|l| !l.trim().is_empty());
    match expected.next().and_then(|h| h.strip_prefix("# prices_sha256 ")) {
        Some(h) if h.trim() == prices_digest() => {}
        _ => {
            writeln!(out, "FAIL prices.csv does not match the golden checksum; regenerate the golden file")?;
            return Ok(EXIT_CHECK_FAILED);
        }
    }
    let cases = check_cases();
    let lines: Vec<String> = cases.par_iter().map(check_line).collect();
    let golden: Vec<&str> = expected.collect();
    if golden.len() != lines.len() {
        writeln!(out, "FAIL golden file has {} cases, expected {}", golden.len(), lines.len())?;
        failed += 1;
    }
    for (c, got) in cases.iter().zip(&lines) {
        let ok = golden.iter().any(|g| g == got);
        writeln!(out, "{} {}", if ok { "PASS" } else { "FAIL" }, c.name)?;
        if !ok {
            failed += 1;
        }
    }
    writeln!(out, "{} of {} cases match", lines.len() - failed.min(lines.len()), lines.len())?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Run the command line; returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(args, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            let _ = writeln!(err, "run `solar -h` for usage");
            EXIT_USAGE
        }
    }
}

fn dispatch(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, UsageError> {
    let io = |e: std::io::Error| usage_err(e.to_string());
    match args.first().map(String::as_str) {
        None => {
            write!(err, "{}", usage()).map_err(io)?;
            Ok(EXIT_USAGE)
        }
        Some("-h") | Some("--help") => {
            match args.get(1) {
                None => write!(out, "{}", usage()).map_err(io)?,
                Some(id) => {
                    let id: u32 = id.parse().map_err(|_| usage_err(format!("bad instance id `{id}`")))?;
                    write!(out, "{}", instance_help(id)?).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Some("-check") => run_check(GOLDEN_CHECK, out).map_err(io),
        Some(_) => {
            let a = parse_eval_args(args)?;
            let text = std::fs::read_to_string(&a.file).map_err(|e| usage_err(format!("{}: {e}", a.file)))?;
            let spec = instance_spec(a.id).expect("parsed id is valid");
            let rows = parse_rows(&text, spec.n())?;
            let seed = match a.seed {
                SeedArg::Fixed(s) => s,
                SeedArg::Diff => {
                    let s = entropy_seed();
                    writeln!(err, "seed={s}").map_err(io)?;
                    s
                }
            };
            for line in evaluate_rows(&a, &rows, seed)? {
                writeln!(out, "{line}").map_err(io)?;
            }
            Ok(EXIT_OK)
        }
    }
}
