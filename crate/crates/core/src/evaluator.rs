//! One evaluation request: kind and bounds check, closed-form gate,
//! replications, averaging or the Gauss stopping rule, output assembly.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::detrng::seed_stream;
use crate::instances::{apriori_eval, instance_spec, penalty, prepare, InstanceSpec, OutputClass, Prepared};
use crate::model::{DesignPoint, EvalOptions, OutputVector, Replications, VarKind, FAIL};
use crate::simulation::{resolution, NoiseModel, NoiseStream};

/// Hard cap on replications under the Gauss rule.
pub const MAX_REPLICATIONS: u32 = 50_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub y: OutputVector,
    pub cnt_eval: bool,
    /// Simulator runs actually performed.
    pub replications_used: u32,
    pub wall_time: Duration,
    /// Time spent inside the simulator; zero when it never started.
    pub simulation_time: Duration,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("unknown instance {0}; valid ids are 1 to 10")]
    UnknownInstance(u32),
    #[error("instance {id} takes {expected} variables, got {got}")]
    Dimension { id: u32, expected: usize, got: usize },
    #[error("instance {0} has a single fidelity; -fid must be 1")]
    Fidelity(u32),
    #[error(transparent)]
    Options(#[from] crate::model::OptionsError),
}

pub fn spec_or_err(id: u32) -> Result<&'static InstanceSpec, EvalError> {
    instance_spec(id).ok_or(EvalError::UnknownInstance(id))
}

/// Every coordinate within bounds, integral where the kind demands it.
pub fn point_is_valid(spec: &InstanceSpec, x: &DesignPoint) -> bool {
    spec.variables.iter().zip(&x.coords).all(|(v, &val)| {
        val.is_finite()
            && val >= v.lower
            && val <= v.upper
            && (v.kind == VarKind::Continuous || val.fract() == 0.0)
    })
}

fn split(spec: &InstanceSpec, values: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    let mut f = values;
    let c = f.split_off(spec.p);
    (f, c)
}

fn outputs(spec: &InstanceSpec, values: Vec<f64>, cnt_eval: bool) -> OutputVector {
    let (objectives, constraints) = split(spec, values);
    OutputVector {
        objectives,
        constraints,
        cnt_eval,
    }
}

/// The noise of a replication: per-instance channels, or none at all.
fn noise_for(noise: NoiseModel, seed: u64, k: u64) -> NoiseStream {
    if noise == NoiseModel::NONE {
        NoiseStream::quiet()
    } else {
        NoiseStream::new(noise, seed_stream(seed, k))
    }
}

/// Probability that the running mean of one output is stable to three
/// significant digits: `erf(h sqrt(k) / (s sqrt 2))` with `h` half a unit
/// in the third digit of the mean.
pub fn stability_probability(mean: f64, std: f64, k: u64) -> f64 {
    if std == 0.0 {
        return 1.0;
    }
    if mean == 0.0 || !mean.is_finite() {
        return 0.0;
    }
    let h = 0.5 * libm::pow(10.0, libm::floor(libm::log10(mean.abs())) - 2.0);
    libm::erf(h * libm::sqrt(k as f64) / (std * std::f64::consts::SQRT_2))
}

/// Gauss stopping rule over `(mean, sample std)` pairs after `k`
/// replications.
pub fn gauss_should_stop(stats: &[(f64, f64)], r: f64, k: u64) -> bool {
    if k >= MAX_REPLICATIONS as u64 {
        return true;
    }
    if k < 2 {
        return false;
    }
    let p: f64 = stats.iter().map(|&(m, s)| stability_probability(m, s, k)).product();
    p >= r
}

/// Running sums in replication order.
struct Accumulator {
    sum: Vec<f64>,
    // Welford state for the stopping rule.
    mean: Vec<f64>,
    m2: Vec<f64>,
    failed: Vec<bool>,
    first: Vec<f64>,
    k: u64,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Accumulator {
            sum: vec![0.0; len],
            mean: vec![0.0; len],
            m2: vec![0.0; len],
            failed: vec![false; len],
            first: Vec::new(),
            k: 0,
        }
    }

    fn push(&mut self, y: &[f64]) {
        self.k += 1;
        if self.first.is_empty() {
            self.first = y.to_vec();
        }
        for (i, &v) in y.iter().enumerate() {
            if v == FAIL {
                self.failed[i] = true;
                continue;
            }
            self.sum[i] += v;
            let d = v - self.mean[i];
            self.mean[i] += d / self.k as f64;
            self.m2[i] += d * (v - self.mean[i]);
        }
    }

    fn stats(&self, stochastic: &[usize]) -> Vec<(f64, f64)> {
        stochastic
            .iter()
            .filter(|&&i| !self.failed[i])
            .map(|&i| {
                let var = if self.k > 1 { self.m2[i] / (self.k - 1) as f64 } else { 0.0 };
                (self.mean[i], libm::sqrt(var.max(0.0)))
            })
            .collect()
    }

    /// Stochastic outputs averaged; everything else from the first run.
    fn finish(&self, spec: &InstanceSpec) -> Vec<f64> {
        spec.outputs
            .iter()
            .enumerate()
            .map(|(i, o)| {
                if self.failed[i] {
                    FAIL
                } else if o.class == OutputClass::Stochastic {
                    self.sum[i] / self.k as f64
                } else {
                    self.first[i]
                }
            })
            .collect()
    }
}

fn run_replications(prep: &Prepared<'_>, seed: u64, reps: Replications) -> (Vec<f64>, u32) {
    let spec = prep.spec;
    let stochastic: Vec<usize> = (0..spec.outputs.len())
        .filter(|&i| spec.outputs[i].class == OutputClass::Stochastic)
        .collect();
    let mut acc = Accumulator::new(spec.outputs.len());
    let rep = |k: u64| prep.replicate(noise_for(spec.noise, seed, k));
    if stochastic.is_empty() {
        // Every replication would be identical.
        acc.push(&rep(1));
        return (acc.finish(spec), 1);
    }
    match reps {
        Replications::Fixed(r) => {
            let runs: Vec<Vec<f64>> = (1..=r as u64).into_par_iter().map(rep).collect();
            for y in &runs {
                acc.push(y);
            }
        }
        Replications::Gauss(target) => {
            let batch = rayon::current_num_threads().max(1) as u64;
            let mut next = 1u64;
            'outer: loop {
                let end = (next + batch).min(MAX_REPLICATIONS as u64 + 1);
                let runs: Vec<Vec<f64>> = (next..end).into_par_iter().map(rep).collect();
                for y in &runs {
                    acc.push(y);
                    if gauss_should_stop(&acc.stats(&stochastic), target, acc.k) {
                        break 'outer;
                    }
                }
                next = end;
            }
        }
    }
    (acc.finish(spec), acc.k as u32)
}

/// Outputs of replication `k` alone (stream `seed_stream(seed, k)`).
pub fn evaluate_replication(id: u32, x: &DesignPoint, opts: &EvalOptions, k: u64) -> Result<Vec<f64>, EvalError> {
    let spec = spec_or_err(id)?;
    let base = if id == 10 { spec_or_err(6)? } else { spec };
    check_request(spec, x, opts)?;
    let prep = prepare(base, x, resolution(&base.window, opts.fidelity));
    let y = prep.replicate(noise_for(base.noise, opts.seed, k));
    Ok(if id == 10 { vec![penalty(&y)] } else { y })
}

fn check_request(spec: &InstanceSpec, x: &DesignPoint, opts: &EvalOptions) -> Result<(), EvalError> {
    if x.len() != spec.n() {
        return Err(EvalError::Dimension {
            id: spec.id,
            expected: spec.n(),
            got: x.len(),
        });
    }
    if !spec.multifidelity && opts.fidelity != 1.0 {
        return Err(EvalError::Fidelity(spec.id));
    }
    EvalOptions::new(opts.seed, opts.replications, opts.fidelity)?;
    Ok(())
}

/// Evaluate instance `id` at `x`.
pub fn evaluate(id: u32, x: &DesignPoint, opts: &EvalOptions) -> Result<EvalResult, EvalError> {
    let start = Instant::now();
    let spec = spec_or_err(id)?;
    check_request(spec, x, opts)?;
    let finish = |y: OutputVector, reps: u32, sim: Duration| EvalResult {
        cnt_eval: y.cnt_eval,
        y,
        replications_used: reps,
        wall_time: start.elapsed(),
        simulation_time: sim,
    };

    if !point_is_valid(spec, x) {
        return Ok(finish(OutputVector::failed(spec.p, spec.m()), 0, Duration::ZERO));
    }
    // SOLAR10 wraps SOLAR6 at the same point.
    let base = if id == 10 { spec_or_err(6)? } else { spec };
    let gate = apriori_eval(base, x);
    if !gate.satisfied || opts.fidelity == 0.0 {
        let y = if id == 10 {
            vec![FAIL]
        } else {
            gate.values.iter().map(|v| v.unwrap_or(FAIL)).collect()
        };
        return Ok(finish(outputs(spec, y, false), 0, Duration::ZERO));
    }
    let prep_start = Instant::now();
    let prep = prepare(base, x, resolution(&base.window, opts.fidelity));
    let (y, reps) = run_replications(&prep, opts.seed, opts.replications);
    let sim = prep_start.elapsed();
    let y = if id == 10 { vec![penalty(&y)] } else { y };
    let ok = !y.iter().any(|&v| v == FAIL);
    Ok(finish(outputs(spec, y, ok), reps, sim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_variance_stops_at_two() {
        assert!(!gauss_should_stop(&[(5.0, 0.0)], 0.9, 1));
        assert!(gauss_should_stop(&[(5.0, 0.0)], 0.9, 2));
        assert!(gauss_should_stop(&[(5.0, 100.0)], 0.9, MAX_REPLICATIONS as u64));
    }

    #[test]
    fn probability_grows_with_k() {
        let a = stability_probability(1234.0, 3.0, 10);
        let b = stability_probability(1234.0, 3.0, 1000);
        assert!(a < b && b <= 1.0);
    }

    #[test]
    fn usage_errors() {
        let x = DesignPoint::new(vec![1.0; 3]);
        let o = EvalOptions::default();
        assert_eq!(evaluate(11, &x, &o), Err(EvalError::UnknownInstance(11)));
        assert!(matches!(evaluate(6, &x, &o), Err(EvalError::Dimension { .. })));
        let x6 = instance_spec(6).unwrap().x0.clone();
        assert_eq!(evaluate(6, &x6, &o.with_fidelity(0.5)), Err(EvalError::Fidelity(6)));
    }
}
