//! Spread of every simulated output across seeds at sampled points.
//!
//! Deterministic outputs must not move at all; stochastic ones report their
//! coefficient of variation (min / median / max over points).
//!
//! ```text
//! cargo run --release --example output_variability -- [points] [seeds] [fidelity] [radius] [ids...]
//! ```
//!
//! A radius of 0 samples the whole box; otherwise points come from a box of
//! that relative half-width around the start point.
//!

use rayon::prelude::*;

use solar::bench::{lhs_sample, local_sample};
use solar::evaluator::evaluate;
use solar::instances::{all_specs, apriori_eval, OutputClass};
use solar::model::{EvalOptions, FAIL};

fn main() {
    let mut args = std::env::args().skip(1);
    let points: usize = args.next().map(|s| s.parse().expect("points")).unwrap_or(20);
    let seeds: u64 = args.next().map(|s| s.parse().expect("seeds")).unwrap_or(100);
    let fid: f64 = args.next().map(|s| s.parse().expect("fidelity")).unwrap_or(0.3);
    let radius: f64 = args.next().map(|s| s.parse().expect("radius")).unwrap_or(0.0);
    let ids: Vec<u32> = args.map(|s| s.parse().expect("instance id")).collect();
    for spec in all_specs().filter(|s| ids.is_empty() || ids.contains(&s.id)) {
        let f = if spec.multifidelity { fid } else { 1.0 };
        let pool = if radius > 0.0 { local_sample(spec, 4000, 77, radius) } else { lhs_sample(spec, 4000, 77) };
        let mut xs: Vec<_> = pool
            .into_iter()
            .filter(|x| spec.id == 10 || apriori_eval(spec, x).satisfied)
            .take(points)
            .collect();
        if xs.len() < points {
            xs.push(spec.x0.clone());
        }
        // Per point: every seed's outputs.
        let runs: Vec<Vec<Vec<f64>>> = xs
            .par_iter()
            .map(|x| {
                (0..seeds)
                    .map(|s| {
                        let o = EvalOptions::default().with_seed(s).with_fidelity(f);
                        evaluate(spec.id, x, &o).expect("valid point").y.values()
                    })
                    .collect()
            })
            .collect();
        println!("{} ({} points, {} seeds, fid {f})", spec.name, xs.len(), seeds);
        for (k, o) in spec.outputs.iter().enumerate() {
            if o.class == OutputClass::Apriori {
                continue;
            }
            let mut cvs = Vec::new();
            let mut moved = 0;
            let mut failed = 0;
            for r in &runs {
                let v: Vec<f64> = r.iter().map(|y| y[k]).collect();
                if v.iter().any(|&a| a == FAIL) {
                    failed += 1;
                    continue;
                }
                if v.iter().any(|&a| a.to_bits() != v[0].to_bits()) {
                    moved += 1;
                }
                let n = v.len() as f64;
                let mean = v.iter().sum::<f64>() / n;
                let var = v.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / (n - 1.0).max(1.0);
                cvs.push(var.sqrt() / mean.abs());
            }
            cvs.sort_by(f64::total_cmp);
            let pick = |q: f64| cvs.get(((cvs.len() as f64 - 1.0) * q) as usize).copied().unwrap_or(f64::NAN);
            let tag = if o.class == OutputClass::Stochastic { "S" } else { "D" };
            println!(
                "  {:>4} {tag} cv {:>10.3e} {:>10.3e} {:>10.3e}  moved {moved:>3} failed {failed:>3}  {}",
                spec.label(k),
                pick(0.0),
                pick(0.5),
                pick(1.0),
                o.description
            );
        }
    }
}
