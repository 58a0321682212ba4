//! Inputs, outputs and evaluation options shared by every module.

use std::fmt;
use std::str::FromStr;

/// Failure sentinel written into outputs that could not be computed.
pub const FAIL: f64 = 1.0e20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Continuous,
    Integer,
    Categorical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariableSpec {
    /// 1-based position in x.
    pub index: usize,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
    pub unit: &'static str,
    pub symbol: &'static str,
    pub description: &'static str,
}

impl VariableSpec {
    pub fn is_discrete(&self) -> bool {
        self.kind != VarKind::Continuous
    }
}

/// A candidate input vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignPoint {
    pub coords: Vec<f64>,
}

impl DesignPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        DesignPoint { coords }
    }

    /// Value of variable `i` (1-based).
    pub fn get(&self, i: usize) -> f64 {
        self.coords[i - 1]
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl From<Vec<f64>> for DesignPoint {
    fn from(coords: Vec<f64>) -> Self {
        DesignPoint { coords }
    }
}

/// `y = (f_1..f_p, c_1..c_m)` plus the `cnt_eval` flag.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputVector {
    pub objectives: Vec<f64>,
    pub constraints: Vec<f64>,
    pub cnt_eval: bool,
}

impl OutputVector {
    pub fn failed(p: usize, m: usize) -> Self {
        OutputVector {
            objectives: vec![FAIL; p],
            constraints: vec![FAIL; m],
            cnt_eval: false,
        }
    }

    /// Flat layout `(f..., c...)`.
    pub fn values(&self) -> Vec<f64> {
        let mut v = self.objectives.clone();
        v.extend_from_slice(&self.constraints);
        v
    }

    pub fn any_fail(&self) -> bool {
        self.objectives.iter().chain(&self.constraints).any(|&v| v == FAIL)
    }

    /// All constraints satisfied and nothing failed.
    pub fn is_feasible(&self) -> bool {
        !self.any_fail() && self.constraints.iter().all(|&c| c <= 0.0)
    }

    /// Parse a line produced by [`fmt::Display`], given the objective count.
    pub fn parse(line: &str, p: usize) -> Result<Self, ParseOutputError> {
        let mut vals = Vec::new();
        let mut cnt_eval = true;
        let mut saw_flag = false;
        for tok in line.split_whitespace() {
            if let Some(flag) = tok.strip_prefix("cnt_eval=") {
                cnt_eval = match flag {
                    "true" => true,
                    "false" => false,
                    _ => return Err(ParseOutputError(tok.to_string())),
                };
                saw_flag = true;
            } else if tok.starts_with("seed=") {
                continue;
            } else {
                vals.push(f64::from_str(tok).map_err(|_| ParseOutputError(tok.to_string()))?);
            }
        }
        if vals.len() < p {
            return Err(ParseOutputError(line.to_string()));
        }
        let constraints = vals.split_off(p);
        if !saw_flag {
            cnt_eval = !vals.iter().chain(&constraints).any(|&v| v == FAIL);
        }
        Ok(OutputVector {
            objectives: vals,
            constraints,
            cnt_eval,
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("cannot parse output value `{0}`")]
pub struct ParseOutputError(pub String);

/// Shortest decimal that parses back to the same double; scientific
/// notation with an explicit exponent sign when `|v| >= 1e6`.
pub fn format_value(v: f64) -> String {
    if v.is_finite() && v.abs() >= 1e6 {
        let s = format!("{:e}", v);
        match s.find('e') {
            Some(i) if !s[i + 1..].starts_with('-') => format!("{}e+{}", &s[..i], &s[i + 1..]),
            _ => s,
        }
    } else {
        format!("{}", v)
    }
}

impl fmt::Display for OutputVector {
    /// Values only; the CLI appends `cnt_eval=` in verbose mode.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.objectives.iter().chain(&self.constraints) {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            f.write_str(&format_value(*v))?;
        }
        Ok(())
    }
}

/// Number of replications requested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Replications {
    Fixed(u32),
    /// Gauss stopping rule with target probability in `(0,1)`.
    Gauss(f64),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OptionsError {
    #[error("fidelity must lie in [0,1], got {0}")]
    Fidelity(f64),
    #[error("replications must be a positive integer or a real in (0,1), got {0}")]
    Replications(f64),
}

impl Replications {
    /// Interpret a numeric `-rep` value.
    pub fn from_value(r: f64) -> Result<Self, OptionsError> {
        if r > 0.0 && r < 1.0 {
            Ok(Replications::Gauss(r))
        } else if r >= 1.0 && r.fract() == 0.0 && r <= u32::MAX as f64 {
            Ok(Replications::Fixed(r as u32))
        } else {
            Err(OptionsError::Replications(r))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub seed: u64,
    pub replications: Replications,
    pub fidelity: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            seed: 0,
            replications: Replications::Fixed(1),
            fidelity: 1.0,
        }
    }
}

impl EvalOptions {
    pub fn new(seed: u64, replications: Replications, fidelity: f64) -> Result<Self, OptionsError> {
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(OptionsError::Fidelity(fidelity));
        }
        if let Replications::Fixed(0) = replications {
            return Err(OptionsError::Replications(0.0));
        }
        if let Replications::Gauss(r) = replications {
            if !(r > 0.0 && r < 1.0) {
                return Err(OptionsError::Replications(r));
            }
        }
        Ok(EvalOptions {
            seed,
            replications,
            fidelity,
        })
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_reps(mut self, reps: u32) -> Self {
        self.replications = Replications::Fixed(reps);
        self
    }

    pub fn with_fidelity(mut self, fidelity: f64) -> Self {
        self.fidelity = fidelity;
        self
    }
}

/// `max(0, c)`, keeping the failure sentinel.
pub fn violation(c: f64) -> f64 {
    if c == FAIL {
        FAIL
    } else if c > 0.0 {
        c
    } else {
        0.0
    }
}
