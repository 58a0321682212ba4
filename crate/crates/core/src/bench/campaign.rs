//! Solver campaigns against a blackbox.

use std::path::PathBuf;
use std::process::Command;

use rayon::prelude::*;

use super::runlog::RunLog;
use super::sampling::sampling_bounds;
use crate::detrng::{seed_stream, RngState};
use crate::evaluator::evaluate;
use crate::instances::InstanceSpec;
use crate::model::{violation, DesignPoint, EvalOptions, OutputVector, VarKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BlackboxError {
    #[error("blackbox could not run: {0}")]
    Spawn(String),
    #[error("blackbox exited with status {status}: {stderr}")]
    Exit { status: i32, stderr: String },
    #[error("unreadable blackbox output: {0}")]
    Output(String),
}

pub trait Blackbox {
    fn evaluate(&mut self, x: &DesignPoint) -> Result<OutputVector, BlackboxError>;
}

/// The in-process evaluator.
#[derive(Debug, Clone)]
pub struct EvaluatorBlackbox {
    pub id: u32,
    pub opts: EvalOptions,
}

impl Blackbox for EvaluatorBlackbox {
    fn evaluate(&mut self, x: &DesignPoint) -> Result<OutputVector, BlackboxError> {
        evaluate(self.id, x, &self.opts)
            .map(|r| r.y)
            .map_err(|e| BlackboxError::Spawn(e.to_string()))
    }
}

/// Any program speaking the `solar` file protocol: it receives
/// `<args...> <id> <file> -v` and prints one line of outputs ending in
/// `cnt_eval=`.
#[derive(Debug, Clone)]
pub struct SubprocessBlackbox {
    pub program: PathBuf,
    pub args: Vec<String>,
    pub trailing: Vec<String>,
    pub id: u32,
    pub p: usize,
    calls: u64,
}

impl SubprocessBlackbox {
    pub fn new(program: impl Into<PathBuf>, id: u32, p: usize) -> Self {
        SubprocessBlackbox {
            program: program.into(),
            args: Vec::new(),
            trailing: Vec::new(),
            id,
            p,
            calls: 0,
        }
    }
}

impl Blackbox for SubprocessBlackbox {
    fn evaluate(&mut self, x: &DesignPoint) -> Result<OutputVector, BlackboxError> {
        self.calls += 1;
        let path = std::env::temp_dir().join(format!(
            "solar-bb-{}-{:p}-{}.txt",
            std::process::id(),
            self as *const Self,
            self.calls
        ));
        let row: Vec<String> = x.coords.iter().map(|v| format!("{v:?}")).collect();
        std::fs::write(&path, row.join(" ") + "\n").map_err(|e| BlackboxError::Spawn(e.to_string()))?;
        let out = Command::new(&self.program)
            .args(&self.args)
            .arg(self.id.to_string())
            .arg(&path)
            .arg("-v")
            .args(&self.trailing)
            .output();
        let _ = std::fs::remove_file(&path);
        let out = out.map_err(|e| BlackboxError::Spawn(e.to_string()))?;
        if !out.status.success() {
            return Err(BlackboxError::Exit {
                status: out.status.code().unwrap_or(-1),
                stderr: String::from_utf8_lossy(&out.stderr).trim().to_string(),
            });
        }
        let text = String::from_utf8_lossy(&out.stdout);
        let line = text.lines().next().ok_or_else(|| BlackboxError::Output("empty".into()))?;
        OutputVector::parse(line, self.p).map_err(|e| BlackboxError::Output(e.to_string()))
    }
}

/// A sequential optimizer: propose a point, observe its outputs.
pub trait Solver {
    fn name(&self) -> &str;
    fn propose(&mut self) -> DesignPoint;
    fn observe(&mut self, x: &DesignPoint, y: &OutputVector);
}

fn box_bounds(spec: &InstanceSpec) -> Vec<(f64, f64, VarKind)> {
    (0..spec.n())
        .map(|i| {
            let (lo, hi) = sampling_bounds(spec, i);
            (lo, hi, spec.variables[i].kind)
        })
        .collect()
}

/// Uniform sampling of the (capped) box.
#[derive(Debug, Clone)]
pub struct RandomSearch {
    bounds: Vec<(f64, f64, VarKind)>,
    rng: RngState,
}

impl RandomSearch {
    pub fn new(spec: &InstanceSpec, seed: u64) -> Self {
        RandomSearch {
            bounds: box_bounds(spec),
            rng: seed_stream(seed, 0x5EA7),
        }
    }
}

impl Solver for RandomSearch {
    fn name(&self) -> &str {
        "random-search"
    }

    fn propose(&mut self) -> DesignPoint {
        let coords = self
            .bounds
            .iter()
            .map(|&(lo, hi, kind)| {
                let u = self.rng.next_unit();
                match kind {
                    VarKind::Continuous => lo + u * (hi - lo),
                    _ => libm::floor(lo + u * (hi - lo + 1.0)).min(hi),
                }
            })
            .collect();
        DesignPoint::new(coords)
    }

    fn observe(&mut self, _x: &DesignPoint, _y: &OutputVector) {}
}

/// Squared constraint violation; infinite on failure.
fn infeasibility(y: &OutputVector) -> f64 {
    if !y.cnt_eval || y.any_fail() {
        return f64::INFINITY;
    }
    y.constraints.iter().map(|&c| violation(c).powi(2)).sum()
}

/// Feasible beats infeasible, then the objective, then the violation.
fn improves(new: &OutputVector, old: &OutputVector) -> bool {
    let (hn, ho) = (infeasibility(new), infeasibility(old));
    if hn.is_infinite() {
        return false;
    }
    match (hn == 0.0, ho == 0.0) {
        (true, true) => new.objectives[0] < old.objectives[0],
        (true, false) => true,
        (false, true) => false,
        (false, false) => hn < ho,
    }
}

/// Compass search along coordinate directions with step halving. Integer
/// steps never go below one; categorical coordinates try every other value.
#[derive(Debug, Clone)]
pub struct CoordinateSearch {
    bounds: Vec<(f64, f64, VarKind)>,
    incumbent: DesignPoint,
    best: Option<OutputVector>,
    steps: Vec<f64>,
    queue: Vec<DesignPoint>,
    improved: bool,
}

impl CoordinateSearch {
    pub fn new(spec: &InstanceSpec, start: DesignPoint) -> Self {
        let bounds = box_bounds(spec);
        let steps = bounds
            .iter()
            .map(|&(lo, hi, kind)| match kind {
                VarKind::Continuous => 0.1 * (hi - lo),
                _ => (0.1 * (hi - lo)).round().max(1.0),
            })
            .collect();
        CoordinateSearch {
            bounds,
            incumbent: start,
            best: None,
            steps,
            queue: Vec::new(),
            improved: false,
        }
    }

    fn refill(&mut self) {
        if !self.improved {
            for (s, b) in self.steps.iter_mut().zip(&self.bounds) {
                *s = match b.2 {
                    VarKind::Continuous => *s / 2.0,
                    _ => (*s / 2.0).round().max(1.0),
                };
            }
        }
        self.improved = false;
        for i in (0..self.bounds.len()).rev() {
            let (lo, hi, kind) = self.bounds[i];
            let x = self.incumbent.coords[i];
            let candidates: Vec<f64> = match kind {
                VarKind::Categorical => {
                    let m = (hi - lo) as usize + 1;
                    (1..m).map(|k| lo + ((x - lo) as usize + k).rem_euclid(m) as f64).collect()
                }
                _ => vec![(x + self.steps[i]).min(hi), (x - self.steps[i]).max(lo)],
            };
            for v in candidates.into_iter().rev() {
                if v != x {
                    let mut p = self.incumbent.clone();
                    p.coords[i] = v;
                    self.queue.push(p);
                }
            }
        }
    }
}

impl Solver for CoordinateSearch {
    fn name(&self) -> &str {
        "coordinate-search"
    }

    fn propose(&mut self) -> DesignPoint {
        if self.best.is_none() {
            return self.incumbent.clone();
        }
        while self.queue.is_empty() {
            self.refill();
        }
        self.queue.pop().expect("refilled")
    }

    fn observe(&mut self, x: &DesignPoint, y: &OutputVector) {
        match &self.best {
            None => self.best = Some(y.clone()),
            Some(b) if improves(y, b) => {
                self.best = Some(y.clone());
                self.incumbent = x.clone();
                self.improved = true;
                // Poll around the new incumbent.
                self.queue.clear();
            }
            _ => {}
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CampaignConfig {
    /// Evaluations with `cnt_eval=true` allowed per run.
    pub budget: usize,
    /// Hard stop on calls, counted or not.
    pub max_calls: usize,
}

impl CampaignConfig {
    /// `factor * n` counted evaluations, at most ten times as many calls.
    pub fn per_dimension(spec: &InstanceSpec, factor: usize) -> Self {
        let budget = factor * spec.n();
        CampaignConfig {
            budget,
            max_calls: 10 * budget,
        }
    }
}

/// Run one solver from every start point; runs proceed in parallel, each
/// one sequential.
pub fn run_campaign<S, B>(
    spec: &InstanceSpec,
    starts: &[DesignPoint],
    config: CampaignConfig,
    make_solver: S,
    make_blackbox: B,
) -> Vec<RunLog>
where
    S: Fn(usize, &DesignPoint) -> Box<dyn Solver + Send> + Sync,
    B: Fn() -> Box<dyn Blackbox + Send> + Sync,
{
    starts
        .par_iter()
        .enumerate()
        .map(|(k, x0)| {
            let mut solver = make_solver(k, x0);
            let mut bb = make_blackbox();
            let mut log = RunLog::new(spec.id, solver.name(), k, spec.n(), spec.p);
            let mut first = true;
            while log.counted() < config.budget && log.entries.len() < config.max_calls {
                let x = if first { x0.clone() } else { solver.propose() };
                first = false;
                match bb.evaluate(&x) {
                    Ok(y) => {
                        solver.observe(&x, &y);
                        log.record(y);
                    }
                    Err(_) => {
                        log.aborted = true;
                        break;
                    }
                }
            }
            log
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::instance_spec;

    #[test]
    fn improvement_order() {
        let y = |f: f64, c: f64| OutputVector {
            objectives: vec![f],
            constraints: vec![c],
            cnt_eval: true,
        };
        assert!(improves(&y(5.0, -1.0), &y(1.0, 2.0)));
        assert!(improves(&y(1.0, -1.0), &y(5.0, -1.0)));
        assert!(!improves(&y(1.0, 3.0), &y(5.0, 2.0)));
        assert!(!improves(&OutputVector::failed(1, 1), &y(5.0, 2.0)));
    }

    #[test]
    fn random_search_stays_in_box() {
        let spec = instance_spec(4).unwrap();
        let mut rs = RandomSearch::new(spec, 1);
        for _ in 0..100 {
            let x = rs.propose();
            assert!(crate::evaluator::point_is_valid(spec, &x));
        }
    }
}
