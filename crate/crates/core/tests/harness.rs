use std::collections::BTreeMap;

use solar::bench::{
    best_known, data_profile, lhs_sample, performance_profile, read_logs, run_campaign, write_curves, write_logs,
    Blackbox, CampaignConfig, CoordinateSearch, EvaluatorBlackbox, ProfileProblem, RandomSearch, SubprocessBlackbox,
};
use solar::evaluator::evaluate;
use solar::instances::instance_spec;
use solar::model::EvalOptions;

#[test]
fn campaign_logs_round_trip_and_profile() {
    let spec = instance_spec(10).unwrap();
    let starts = lhs_sample(spec, 3, 4);
    let cfg = CampaignConfig { budget: 15, max_calls: 100 };
    let bb = || Box::new(EvaluatorBlackbox { id: 10, opts: EvalOptions::default() }) as Box<dyn Blackbox + Send>;
    let mut logs = run_campaign(spec, &starts, cfg, |k, _| Box::new(RandomSearch::new(spec, k as u64)), bb);
    logs.extend(run_campaign(spec, &starts, cfg, |_, x| Box::new(CoordinateSearch::new(spec, x.clone())), bb));
    assert_eq!(logs.len(), 6);
    for l in &logs {
        assert!(!l.aborted);
        assert_eq!(l.counted(), 15);
        assert!(l.entries.windows(2).all(|w| w[1].best <= w[0].best));
    }

    let mut csv = Vec::new();
    write_logs(&mut csv, &logs).unwrap();
    assert_eq!(read_logs(&csv[..]).unwrap(), logs);

    let best = best_known(&logs);
    let problems: BTreeMap<String, ProfileProblem> = best
        .iter()
        .map(|(k, &f_best)| {
            let start: usize = k.split('#').nth(1).unwrap().parse().unwrap();
            let f_start = evaluate(10, &starts[start], &EvalOptions::default()).unwrap().y.objectives[0];
            (k.clone(), ProfileProblem { n: spec.n(), f_best, f_start })
        })
        .collect();
    let alphas = [0.0, 1.0, 2.0, 4.0];
    let dp = data_profile(&logs, &problems, 1e-2, &alphas).unwrap();
    let pp = performance_profile(&logs, &problems, 1e-2, &alphas).unwrap();
    for curves in [&dp, &pp] {
        for c in curves.values() {
            assert!(c.windows(2).all(|w| w[0].1 <= w[1].1));
            assert!(c.iter().all(|&(_, v)| (0.0..=1.0).contains(&v)));
        }
    }
    // Some solver reaches every best-known value.
    assert!(pp.values().map(|c| c[3].1).fold(0.0, f64::max) > 0.0);
    let mut out = Vec::new();
    write_curves(&mut out, &dp).unwrap();
    assert!(String::from_utf8(out).unwrap().starts_with("solver,alpha,value"));
}

#[test]
fn subprocess_blackbox_matches_in_process() {
    let spec = instance_spec(7).unwrap();
    let mut sub = SubprocessBlackbox::new(env!("CARGO_BIN_EXE_solar"), 7, 1);
    sub.trailing = vec!["-fid=0.2".into()];
    let mut local = EvaluatorBlackbox { id: 7, opts: EvalOptions::default().with_fidelity(0.2) };
    for x in lhs_sample(spec, 3, 8).iter().chain([&spec.x0]) {
        let a = sub.evaluate(x).unwrap();
        let b = local.evaluate(x).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn broken_blackbox_aborts_the_run() {
    let spec = instance_spec(6).unwrap();
    let cfg = CampaignConfig { budget: 5, max_calls: 10 };
    let logs = run_campaign(
        spec,
        &[spec.x0.clone()],
        cfg,
        |k, _| Box::new(RandomSearch::new(spec, k as u64)),
        || Box::new(SubprocessBlackbox::new("/nonexistent/solar", 6, 1)) as Box<dyn Blackbox + Send>,
    );
    assert!(logs[0].aborted);
    assert!(logs[0].entries.is_empty());
}
