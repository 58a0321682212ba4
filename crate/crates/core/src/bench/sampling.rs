//! Latin hypercube sampling and feasibility screening.

use rayon::prelude::*;

use crate::detrng::{seed_stream, RngState};
use crate::evaluator::evaluate;
use crate::instances::{apriori_eval, InstanceSpec, Var};
use crate::model::{DesignPoint, EvalOptions, VarKind};

/// Sampling range of a variable; unbounded integers are capped relative to
/// the start point.
pub fn sampling_bounds(spec: &InstanceSpec, i: usize) -> (f64, f64) {
    let v = &spec.variables[i];
    if v.upper.is_finite() {
        return (v.lower, v.upper);
    }
    let x0 = spec.x0.coords[i];
    let factor = if spec.layout[i] == Var::Heliostats { 4.0 } else { 10.0 };
    (v.lower, (factor * x0).max(v.lower))
}

fn below(rng: &mut RngState, n: usize) -> usize {
    ((rng.next_unit() * n as f64) as usize).min(n - 1)
}

fn permutation(rng: &mut RngState, k: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        p.swap(i, below(rng, i + 1));
    }
    p
}

/// `k` points, one per stratum in every continuous and integer coordinate.
pub fn lhs_sample(spec: &InstanceSpec, k: usize, seed: u64) -> Vec<DesignPoint> {
    lhs_in(spec, k, seed, |i| sampling_bounds(spec, i))
}

/// Latin hypercube in a box of half-width `radius` (a fraction of each
/// sampling range) around the start point. Categorical values stay at x0.
pub fn local_sample(spec: &InstanceSpec, k: usize, seed: u64, radius: f64) -> Vec<DesignPoint> {
    lhs_in(spec, k, seed, |i| {
        let (lo, hi) = sampling_bounds(spec, i);
        let x0 = spec.x0.coords[i];
        if spec.variables[i].kind == VarKind::Categorical {
            return (x0, x0);
        }
        let r = radius * (hi - lo);
        ((x0 - r).max(lo), (x0 + r).min(hi))
    })
}

fn lhs_in(spec: &InstanceSpec, k: usize, seed: u64, bounds: impl Fn(usize) -> (f64, f64)) -> Vec<DesignPoint> {
    let mut rng = seed_stream(seed, spec.id as u64);
    let mut pts = vec![DesignPoint::new(vec![0.0; spec.n()]); k];
    for (i, v) in spec.variables.iter().enumerate() {
        let (lo, hi) = bounds(i);
        if v.kind == VarKind::Categorical {
            let m = (hi - lo) as usize + 1;
            for p in pts.iter_mut() {
                p.coords[i] = lo + below(&mut rng, m) as f64;
            }
            continue;
        }
        let perm = permutation(&mut rng, k);
        for (p, &s) in pts.iter_mut().zip(&perm) {
            let u = (s as f64 + rng.next_unit()) / k as f64;
            p.coords[i] = match v.kind {
                VarKind::Continuous => lo + u * (hi - lo),
                _ => libm::floor(libm::ceil(lo) + u * (libm::floor(hi) - libm::ceil(lo) + 1.0)).min(libm::floor(hi)),
            };
        }
    }
    pts
}

/// Percentages over a sample, in the style of a feasibility table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityStats {
    pub apriori_feasible: f64,
    pub feasible: f64,
    pub hidden: f64,
    pub samples: usize,
}

/// Outcome of one screened point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Screen {
    pub apriori_ok: bool,
    pub feasible: bool,
    pub hidden: bool,
}

pub fn screen_point(spec: &InstanceSpec, x: &DesignPoint, opts: &EvalOptions) -> Screen {
    let base = if spec.id == 10 { crate::instances::instance_spec(6).expect("SOLAR6 exists") } else { spec };
    let apriori_ok = apriori_eval(base, x).satisfied;
    if !apriori_ok {
        return Screen {
            apriori_ok,
            feasible: false,
            hidden: false,
        };
    }
    let r = evaluate(spec.id, x, opts).expect("sampled points have the instance dimension");
    Screen {
        apriori_ok,
        feasible: r.y.is_feasible(),
        hidden: r.y.any_fail(),
    }
}

pub fn summarize(screens: &[Screen]) -> FeasibilityStats {
    let n = screens.len().max(1) as f64;
    let pct = |f: fn(&Screen) -> bool| 100.0 * screens.iter().filter(|s| f(s)).count() as f64 / n;
    FeasibilityStats {
        apriori_feasible: pct(|s| s.apriori_ok),
        feasible: pct(|s| s.feasible),
        hidden: pct(|s| s.hidden),
        samples: screens.len(),
    }
}

pub fn feasibility_stats(spec: &InstanceSpec, samples: &[DesignPoint], opts: &EvalOptions) -> FeasibilityStats {
    let screens: Vec<Screen> = samples.par_iter().map(|x| screen_point(spec, x, opts)).collect();
    summarize(&screens)
}
