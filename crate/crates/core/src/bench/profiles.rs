//! Data and performance profiles.
//!
//! A problem is one (instance, start point) pair. Solver `s` solves problem
//! `p` at the first budget-counted evaluation `t_ps` whose best feasible
//! value reaches `f_L + tau (f_0 - f_L)`, with `f_L` the best value known
//! for the problem and `f_0` the value at the start point.
//!
//! - data profile: `d_s(a) = |{p : t_ps <= a (n_p + 1)}| / |P|`
//! - performance profile: `rho_s(a) = |{p : t_ps <= a min_s' t_ps'}| / |P|`

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use super::runlog::RunLog;

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileProblem {
    pub n: usize,
    /// Best value known for the problem.
    pub f_best: f64,
    /// Reference value at the start point.
    pub f_start: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ProfileError {
    #[error("no best-known value for problem {0}")]
    MissingBest(String),
    #[error("no run logs")]
    Empty,
}

/// Profile value of one solver at each requested abscissa.
pub type Curves = BTreeMap<String, Vec<(f64, f64)>>;

/// First counted evaluation reaching the tolerance, if any.
pub fn solve_time(log: &RunLog, problem: &ProfileProblem, tau: f64) -> Option<usize> {
    let target = problem.f_best + tau * (problem.f_start - problem.f_best);
    log.entries.iter().find(|e| e.best <= target).map(|e| e.counted.max(1))
}

/// Best feasible value per problem over all logs.
pub fn best_known(logs: &[RunLog]) -> BTreeMap<String, f64> {
    let mut m = BTreeMap::new();
    for l in logs {
        let e = m.entry(l.problem_key()).or_insert(f64::INFINITY);
        *e = f64::min(*e, l.best());
    }
    m
}

/// `t_ps` for every problem (rows) and solver (columns), `None` if unsolved.
fn times(
    logs: &[RunLog],
    problems: &BTreeMap<String, ProfileProblem>,
    tau: f64,
) -> Result<(Vec<String>, Vec<String>, Vec<Vec<Option<usize>>>), ProfileError> {
    if logs.is_empty() {
        return Err(ProfileError::Empty);
    }
    let keys: Vec<String> = logs.iter().map(|l| l.problem_key()).collect::<BTreeSet<_>>().into_iter().collect();
    let solvers: Vec<String> = logs.iter().map(|l| l.solver.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut t = vec![vec![None; solvers.len()]; keys.len()];
    for (i, k) in keys.iter().enumerate() {
        let prob = problems.get(k).ok_or_else(|| ProfileError::MissingBest(k.clone()))?;
        for (j, s) in solvers.iter().enumerate() {
            t[i][j] = logs
                .iter()
                .filter(|l| &l.problem_key() == k && &l.solver == s)
                .filter_map(|l| solve_time(l, prob, tau))
                .min();
        }
    }
    Ok((keys, solvers, t))
}

pub fn data_profile(
    logs: &[RunLog],
    problems: &BTreeMap<String, ProfileProblem>,
    tau: f64,
    alphas: &[f64],
) -> Result<Curves, ProfileError> {
    let (keys, solvers, t) = times(logs, problems, tau)?;
    let np = keys.len() as f64;
    let mut out = Curves::new();
    for (j, s) in solvers.iter().enumerate() {
        let curve = alphas
            .iter()
            .map(|&a| {
                let solved = keys
                    .iter()
                    .enumerate()
                    .filter(|(i, k)| t[*i][j].is_some_and(|tp| tp as f64 <= a * (problems[*k].n as f64 + 1.0)))
                    .count();
                (a, solved as f64 / np)
            })
            .collect();
        out.insert(s.clone(), curve);
    }
    Ok(out)
}

pub fn performance_profile(
    logs: &[RunLog],
    problems: &BTreeMap<String, ProfileProblem>,
    tau: f64,
    alphas: &[f64],
) -> Result<Curves, ProfileError> {
    let (keys, solvers, t) = times(logs, problems, tau)?;
    let np = keys.len() as f64;
    let min_t: Vec<Option<usize>> = t.iter().map(|row| row.iter().flatten().min().copied()).collect();
    let mut out = Curves::new();
    for (j, s) in solvers.iter().enumerate() {
        let curve = alphas
            .iter()
            .map(|&a| {
                let solved = (0..keys.len())
                    .filter(|&i| match (t[i][j], min_t[i]) {
                        (Some(tp), Some(m)) => tp as f64 <= a * m as f64,
                        _ => false,
                    })
                    .count();
                (a, solved as f64 / np)
            })
            .collect();
        out.insert(s.clone(), curve);
    }
    Ok(out)
}

/// `solver,alpha,value` rows.
pub fn write_curves<W: Write>(mut out: W, curves: &Curves) -> std::io::Result<()> {
    writeln!(out, "solver,alpha,value")?;
    for (s, c) in curves {
        for (a, v) in c {
            writeln!(out, "{s},{a},{v}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OutputVector;

    fn log(solver: &str, values: &[f64]) -> RunLog {
        let mut l = RunLog::new(1, solver, 0, 2, 1);
        for &v in values {
            l.record(OutputVector {
                objectives: vec![v],
                constraints: vec![],
                cnt_eval: true,
            });
        }
        l
    }

    #[test]
    fn instant_and_never() {
        let logs = vec![log("a", &[0.0, 0.0]), log("b", &[10.0, 10.0])];
        let mut probs = BTreeMap::new();
        probs.insert("1#0".to_string(), ProfileProblem { n: 2, f_best: 0.0, f_start: 10.0 });
        let alphas = [0.2, 1.0, 5.0];
        let d = data_profile(&logs, &probs, 1e-3, &alphas).unwrap();
        assert_eq!(d["a"], vec![(0.2, 0.0), (1.0, 1.0), (5.0, 1.0)]);
        assert!(d["b"].iter().all(|&(_, v)| v == 0.0));
        let p = performance_profile(&logs, &probs, 1e-3, &[1.0]).unwrap();
        assert_eq!(p["a"], vec![(1.0, 1.0)]);
        assert!(matches!(data_profile(&logs, &BTreeMap::new(), 0.1, &alphas), Err(ProfileError::MissingBest(_))));
    }
}
