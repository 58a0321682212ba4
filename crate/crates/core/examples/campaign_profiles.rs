//! Run two built-in solvers on an instance from several start points,
//! write their logs and the data and performance profiles.
//!
//! ```text
//! cargo run --release --example campaign_profiles -- [id] [starts] [budget_per_n] [out_dir]
//! ```

use std::collections::BTreeMap;
use std::fs::File;
use std::path::PathBuf;

use solar::bench::{
    best_known, data_profile, lhs_sample, performance_profile, run_campaign, write_curves, write_logs, Blackbox,
    CampaignConfig, CoordinateSearch, EvaluatorBlackbox, ProfileProblem, RandomSearch,
};
use solar::evaluator::evaluate;
use solar::instances::instance_spec;
use solar::model::EvalOptions;

fn main() -> std::io::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: u32 = args.next().map(|s| s.parse().expect("instance id")).unwrap_or(10);
    let n_starts: usize = args.next().map(|s| s.parse().expect("start count")).unwrap_or(5);
    let factor: usize = args.next().map(|s| s.parse().expect("budget factor")).unwrap_or(20);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    let spec = instance_spec(id).expect("instance id between 1 and 10");
    let opts = EvalOptions::default().with_fidelity(if spec.multifidelity { 0.3 } else { 1.0 });

    let mut starts = vec![spec.x0.clone()];
    starts.extend(lhs_sample(spec, n_starts.saturating_sub(1), 1));
    let cfg = CampaignConfig::per_dimension(spec, factor);
    let bb = || Box::new(EvaluatorBlackbox { id, opts }) as Box<dyn Blackbox + Send>;
    let mut logs = run_campaign(spec, &starts, cfg, |k, _| Box::new(RandomSearch::new(spec, k as u64)), bb);
    logs.extend(run_campaign(spec, &starts, cfg, |_, x| Box::new(CoordinateSearch::new(spec, x.clone())), bb));
    write_logs(File::create(dir.join("runs.csv"))?, &logs)?;

    let problems: BTreeMap<String, ProfileProblem> = best_known(&logs)
        .into_iter()
        .map(|(key, f_best)| {
            let k: usize = key.split('#').nth(1).and_then(|s| s.parse().ok()).expect("problem key");
            let y = evaluate(id, &starts[k], &opts).expect("start point").y;
            // An infeasible start counts from its own objective value.
            (key, ProfileProblem { n: spec.n(), f_best, f_start: y.objectives[0] })
        })
        .collect();
    let alphas: Vec<f64> = (0..=50).map(|a| a as f64).collect();
    for tau in [1e-1, 1e-3] {
        let dp = data_profile(&logs, &problems, tau, &alphas).expect("profiles");
        let pp = performance_profile(&logs, &problems, tau, &alphas).expect("profiles");
        write_curves(File::create(dir.join(format!("data_profile_tau{tau}.csv")))?, &dp)?;
        write_curves(File::create(dir.join(format!("perf_profile_tau{tau}.csv")))?, &pp)?;
        for (s, c) in &dp {
            println!("tau {tau:e} {s:<12} solved {:.0}% of problems within {} simplex gradients", 100.0 * c[c.len() - 1].1, alphas[alphas.len() - 1]);
        }
    }
    for l in &logs {
        println!("{} start {} {:<12} best {:.6e} after {} counted", spec.name, l.start, l.solver, l.best(), l.counted());
    }
    Ok(())
}
