//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Sample sizes default to a reduced run that fits in a test cycle on one
//! core. `SOLAR_ACCEPTANCE_FULL=1` switches to the full sizes and
//! `SOLAR_ACCEPTANCE_STRICT=1` makes any FAIL exit non-zero.
//! `SOLAR_ACCEPTANCE_ONLY=7,12` runs a subset.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use solar::bench::{
    data_profile, feasibility_stats, lhs_sample, local_sample, performance_profile, ProfileProblem, RunLog,
};
use solar::evaluator::{evaluate, evaluate_replication, gauss_should_stop, MAX_REPLICATIONS};
use solar::instances::{all_specs, apriori_eval, instance_spec, prepare, InstanceSpec, OutputClass};
use solar::model::{DesignPoint, EvalOptions, OutputVector, Replications, VarKind, FAIL};
use solar::simulation::{resolution, NoiseStream};
use solar::thermal_loop::{effectiveness, receiver_absorb, ReceiverSpec};

struct Sizes {
    full: bool,
    /// Points for the seed-invariance check.
    variability_points: usize,
    variability_seeds: u64,
    /// SOLAR5 runs one 30-day simulation per evaluation.
    solar5_points: usize,
    lhs: usize,
}

impl Sizes {
    fn from_env() -> Self {
        let full = std::env::var("SOLAR_ACCEPTANCE_FULL").is_ok_and(|v| v == "1");
        if full {
            Sizes {
                full,
                variability_points: 20,
                variability_seeds: 100,
                solar5_points: 20,
                lhs: 10_000,
            }
        } else {
            Sizes {
                full,
                variability_points: 8,
                variability_seeds: 20,
                solar5_points: 2,
                lhs: 2_000,
            }
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn fid_for(spec: &InstanceSpec, fid: f64) -> f64 {
    if spec.multifidelity {
        fid
    } else {
        1.0
    }
}

fn options(spec: &InstanceSpec, seed: u64, fid: f64) -> EvalOptions {
    EvalOptions::default().with_seed(seed).with_fidelity(fid_for(spec, fid))
}

fn labels(spec: &InstanceSpec, class: OutputClass) -> Vec<String> {
    (0..spec.outputs.len())
        .filter(|&k| spec.outputs[k].class == class)
        .map(|k| spec.label(k))
        .collect()
}

fn split(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

// ---------------------------------------------------------------- 1

/// (id, continuous, discrete incl. categorical, categorical, n, p,
/// simulation constraints, a-priori constraints, linear a-priori, m,
/// stochastic outputs, multifidelity)
const CHARACTERISTICS: [(u32, usize, usize, usize, usize, usize, usize, usize, usize, usize, usize, bool); 10] = [
    (1, 8, 1, 0, 9, 1, 2, 3, 2, 5, 1, false),
    (2, 12, 2, 0, 14, 1, 7, 5, 3, 12, 4, true),
    (3, 17, 3, 1, 20, 1, 8, 5, 3, 13, 5, true),
    (4, 22, 7, 1, 29, 1, 9, 7, 5, 16, 6, true),
    (5, 14, 6, 1, 20, 1, 8, 4, 3, 12, 0, false),
    (6, 5, 0, 0, 5, 1, 6, 0, 0, 6, 0, false),
    (7, 6, 1, 0, 7, 1, 4, 2, 1, 6, 3, true),
    (8, 11, 2, 0, 13, 2, 4, 5, 3, 9, 4, true),
    (9, 22, 7, 1, 29, 2, 10, 7, 5, 17, 6, true),
    (10, 5, 0, 0, 5, 1, 0, 0, 0, 0, 0, false),
];

/// (a priori, simulated deterministic, simulated stochastic)
const CLASSES: [(&str, &str, &str); 10] = [
    ("c2 c3 c4", "c1 c5", "f1"),
    ("f1 c1 c4 c5 c10 c11", "c3 c6 c12", "c2 c7 c8 c9"),
    ("c1 c3 c4 c10 c11", "f1 c5 c9 c12", "c2 c6 c7 c8 c13"),
    ("c1 c3 c4 c10 c11 c14 c15", "f1 c5 c12 c16", "c2 c6 c7 c8 c9 c13"),
    ("c6 c7 c10 c11", "f1 c1 c2 c3 c4 c5 c8 c9 c12", ""),
    ("", "f1 c1 c2 c3 c4 c5 c6", ""),
    ("c3 c5", "c1 c4", "f1 c2 c6"),
    ("c1 c2 c3 c6 c7", "f2 c4", "f1 c5 c8 c9"),
    ("c3 c4 c5 c11 c12 c15 c16", "c1 c6 c13 c17", "f1 f2 c2 c7 c8 c9 c10 c14"),
    ("", "f1", ""),
];

fn metadata() -> Outcome {
    let mut bad = Vec::new();
    for &(id, cont, disc, cat, n, p, sim, ap, lin, m, stoch, mf) in &CHARACTERISTICS {
        let s = instance_spec(id).expect("instance exists");
        let got = (
            s.count_kind(VarKind::Continuous),
            s.count_kind(VarKind::Integer) + s.count_kind(VarKind::Categorical),
            s.count_kind(VarKind::Categorical),
            s.n(),
            s.p,
            s.simulation_constraints(),
            s.apriori_constraints(),
            s.linear_apriori_constraints(),
            s.m(),
            s.count_class(OutputClass::Stochastic),
            s.multifidelity,
        );
        let want = (cont, disc, cat, n, p, sim, ap, lin, m, stoch, mf);
        if got != want {
            bad.push(format!("{} characteristics {got:?} != {want:?}", s.name));
        }
        let (a, d, st) = CLASSES[id as usize - 1];
        let classes = [
            (OutputClass::Apriori, a),
            (OutputClass::Deterministic, d),
            (OutputClass::Stochastic, st),
        ];
        for (class, want) in classes {
            if labels(s, class) != split(want) {
                bad.push(format!("{} {class:?} outputs {:?} != {want:?}", s.name, labels(s, class)));
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "10 instances match".into() } else { bad.join("; ") })
}

// ---------------------------------------------------------------- 2

fn ulps(a: f64, b: f64) -> u64 {
    let key = |v: f64| {
        let bits = v.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    };
    key(a).abs_diff(key(b))
}

fn analytic_objective() -> Outcome {
    let s = instance_spec(2).expect("SOLAR2");
    let pts = lhs_sample(s, 1000, 2024);
    let mut worst = 0;
    for x in &pts {
        let (x3, x7, x8, x9) = (x.get(3), x.get(7), x.get(8), x.get(9));
        let want = x3 * x3 * (x9 * x9 - x8 * x8) * x7 * PI / 180.0;
        let got = apriori_eval(s, x).values[0].expect("a-priori objective");
        worst = worst.max(ulps(got, want));
    }
    outcome(worst <= 1, format!("1000 points, worst distance {worst} ulp"))
}

// ---------------------------------------------------------------- 3

fn penalty_oracle(y6: &[f64]) -> f64 {
    if y6.contains(&FAIL) {
        return FAIL;
    }
    let g: Vec<f64> = y6[1..].iter().map(|&c| c.max(0.0)).collect();
    y6[0] / 1e6 + (g[0] * g[0] + (2e-6 * g[1]) * (2e-6 * g[1]) + g[2] * g[2] + g[3] * g[3] + g[4] * g[4] + g[5] * g[5]) / 2.0
}

fn penalty_composition() -> Outcome {
    let s6 = instance_spec(6).expect("SOLAR6");
    let pts = lhs_sample(s6, 100, 10);
    let o = EvalOptions::default();
    let bad: Vec<usize> = pts
        .par_iter()
        .enumerate()
        .filter_map(|(i, x)| {
            let y6 = evaluate(6, x, &o).expect("SOLAR6").y.values();
            let y10 = evaluate(10, x, &o).expect("SOLAR10").y.values();
            (y10.len() != 1 || y10[0].to_bits() != penalty_oracle(&y6).to_bits()).then_some(i)
        })
        .collect();
    outcome(bad.is_empty(), format!("100 points, {} mismatches", bad.len()))
}

// ---------------------------------------------------------------- 4

fn determinism() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_solar"))
        .arg("-check")
        .output()
        .expect("run solar -check");
    let text = String::from_utf8_lossy(&out.stdout);
    let check_ok = out.status.success();
    let summary = text.lines().last().unwrap_or("").to_string();
    let mut differ = Vec::new();
    for s in all_specs() {
        let o = options(s, 5, 0.3).with_reps(2);
        let a = evaluate(s.id, &s.x0, &o).expect("x0").y.values();
        let b = evaluate(s.id, &s.x0, &o).expect("x0").y.values();
        if a.iter().zip(&b).any(|(u, v)| u.to_bits() != v.to_bits()) {
            differ.push(s.name);
        }
    }
    outcome(
        check_ok && differ.is_empty(),
        format!(
            "solar -check: {summary}; repeated evaluations differ on {differ:?} (this platform only; a second platform needs CI)"
        ),
    )
}

// ---------------------------------------------------------------- 5

fn replication_semantics() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    for id in [2u32, 7, 8, 9] {
        let s = instance_spec(id).expect("instance");
        for seed in [0u64, 3] {
            let base = options(s, seed, 0.2);
            let singles: Vec<Vec<f64>> = (1..=10u64)
                .into_par_iter()
                .map(|k| evaluate_replication(id, &s.x0, &base, k).expect("replication"))
                .collect();
            for r in [2u32, 5, 10] {
                cases += 1;
                let got = evaluate(id, &s.x0, &base.with_reps(r)).expect("evaluation");
                let y = got.y.values();
                for (i, o) in s.outputs.iter().enumerate() {
                    let runs: Vec<f64> = singles[..r as usize].iter().map(|v| v[i]).collect();
                    let want = if runs.contains(&FAIL) {
                        FAIL
                    } else if o.class == OutputClass::Stochastic {
                        let mut sum = 0.0;
                        for v in &runs {
                            sum += v;
                        }
                        sum / r as f64
                    } else {
                        runs[0]
                    };
                    if y[i].to_bits() != want.to_bits() {
                        bad.push(format!("{} seed {seed} rep {r} {}", s.name, s.label(i)));
                    }
                }
                if got.replications_used != r {
                    bad.push(format!("{} rep {r} used {}", s.name, got.replications_used));
                }
            }
        }
    }
    let rule_ok = !gauss_should_stop(&[(3.0, 0.0)], 0.99, 1)
        && gauss_should_stop(&[(3.0, 0.0)], 0.99, 2)
        && gauss_should_stop(&[(3.0, 1e9)], 0.99, MAX_REPLICATIONS as u64);
    let s7 = instance_spec(7).expect("SOLAR7");
    let gauss = EvalOptions::new(1, Replications::Gauss(0.5), 0.1).expect("options");
    let g = evaluate(7, &s7.x0, &gauss).expect("gauss");
    let gauss_ok = (2..=MAX_REPLICATIONS).contains(&g.replications_used);
    if !rule_ok {
        bad.push("stopping rule".into());
    }
    if !gauss_ok {
        bad.push(format!("Gauss run used {} replications", g.replications_used));
    }
    outcome(
        bad.is_empty(),
        format!(
            "{cases} averaged requests checked bit-exactly, Gauss run on SOLAR7.1 stopped after {} replications{}",
            g.replications_used,
            if bad.is_empty() { String::new() } else { format!("; failures: {}", bad.join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------- 6

fn failure_semantics() -> Outcome {
    let mut bad = Vec::new();
    let s1 = instance_spec(1).expect("SOLAR1");
    let o = EvalOptions::default();

    let mut x = s1.x0.clone();
    x.coords[5] += 0.5;
    let r = evaluate(1, &x, &o).expect("evaluation");
    if !(r.y.values().iter().all(|&v| v == FAIL) && !r.cnt_eval) {
        bad.push("non-integer heliostat count");
    }

    // Minimum radius beyond the maximum one.
    let mut x = s1.x0.clone();
    x.coords[7] = x.coords[8] + 1.0;
    let r = evaluate(1, &x, &o).expect("evaluation");
    let gate = apriori_eval(s1, &x);
    let apriori_kept = s1.outputs.iter().enumerate().all(|(k, out)| match out.class {
        OutputClass::Apriori => r.y.values()[k] == gate.values[k].expect("closed form"),
        _ => r.y.values()[k] == FAIL,
    });
    if !(apriori_kept && !r.cnt_eval && r.simulation_time == Duration::ZERO && r.replications_used == 0) {
        bad.push("a-priori violation");
    }

    let mut x = s1.x0.clone();
    x.coords[7] = 0.0;
    let r = evaluate(1, &x, &o).expect("evaluation");
    let a = apriori_eval(s1, &x);
    if !(a.satisfied && r.y.any_fail() && !r.cnt_eval) {
        bad.push("SOLAR1.1 with x8 = 0");
    }
    outcome(bad.is_empty(), if bad.is_empty() { "3 paths as expected".into() } else { format!("wrong: {bad:?}") })
}

// ---------------------------------------------------------------- 7

fn cv(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / (n - 1.0);
    if var == 0.0 {
        0.0
    } else {
        var.sqrt() / mean.abs()
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

fn seed_invariance(sz: &Sizes) -> Outcome {
    let mut det_bad = Vec::new();
    let mut band_bad = Vec::new();
    let mut checked = 0;
    for s in all_specs() {
        let points = if s.id == 5 { sz.solar5_points } else { sz.variability_points };
        let stochastic = s.count_class(OutputClass::Stochastic) > 0;
        let seeds = if stochastic { sz.variability_seeds } else { 10 };
        let base = if s.id == 10 { instance_spec(6).expect("SOLAR6") } else { s };
        let xs: Vec<DesignPoint> = local_sample(s, 4000, 77, 0.1)
            .into_iter()
            .filter(|x| apriori_eval(base, x).satisfied)
            .take(points)
            .collect();
        // runs[point][seed][output]
        let runs: Vec<Vec<Vec<f64>>> = xs
            .par_iter()
            .map(|x| {
                (0..seeds)
                    .map(|seed| evaluate(s.id, x, &options(s, seed, 0.3)).expect("point").y.values())
                    .collect()
            })
            .collect();
        for (k, o) in s.outputs.iter().enumerate() {
            match o.class {
                OutputClass::Apriori => {}
                OutputClass::Deterministic => {
                    let moved = runs
                        .iter()
                        .any(|r| r[..10.min(r.len())].iter().any(|y| y[k].to_bits() != r[0][k].to_bits()));
                    if moved {
                        det_bad.push(format!("{} {}", s.name, s.label(k)));
                    }
                }
                OutputClass::Stochastic => {
                    let cvs: Vec<f64> = runs
                        .iter()
                        .map(|r| r.iter().map(|y| y[k]).collect::<Vec<_>>())
                        .filter(|v| !v.contains(&FAIL))
                        .map(|v| cv(&v))
                        .collect();
                    let m = if cvs.is_empty() { f64::NAN } else { median(cvs) };
                    if !(1e-4..=0.5).contains(&m) {
                        band_bad.push(format!("{} {} median cv {m:.2e}", s.name, s.label(k)));
                    }
                }
            }
        }
        checked += xs.len();
    }
    let pass = det_bad.is_empty() && band_bad.is_empty();
    let mut detail = format!(
        "{checked} points, {} seeds; deterministic outputs that moved: {det_bad:?}",
        sz.variability_seeds
    );
    if !band_bad.is_empty() {
        detail.push_str(&format!("; stochastic outputs outside [1e-4, 0.5]: {}", band_bad.join(", ")));
    }
    outcome(pass, detail)
}

// ---------------------------------------------------------------- 8

fn fidelity_behaviour() -> Outcome {
    let mut bad = Vec::new();
    for s in all_specs().filter(|s| s.multifidelity) {
        let r = evaluate(s.id, &s.x0, &EvalOptions::default().with_fidelity(0.0)).expect("x0");
        let ok = s.outputs.iter().enumerate().all(|(k, o)| {
            let v = r.y.values()[k];
            (o.class == OutputClass::Apriori) == (v != FAIL)
        });
        if !ok || r.cnt_eval || r.simulation_time != Duration::ZERO {
            bad.push(format!("{} at fid 0", s.name));
        }
    }
    let s2 = instance_spec(2).expect("SOLAR2");
    let xs: Vec<DesignPoint> = local_sample(s2, 4000, 5, 0.1)
        .into_iter()
        .filter(|x| apriori_eval(s2, x).satisfied)
        .take(20)
        .collect();
    let fids = [0.2, 0.4, 0.5, 0.6, 0.8, 1.0];
    let mut total = [Duration::ZERO; 6];
    // Interleave fidelities so drift in machine load hits them alike.
    for x in &xs {
        for (j, &f) in fids.iter().enumerate() {
            let t = Instant::now();
            evaluate(2, x, &EvalOptions::default().with_fidelity(f)).expect("point");
            total[j] += t.elapsed();
        }
    }
    let mean: Vec<f64> = total.iter().map(|d| d.as_secs_f64() / xs.len() as f64).collect();
    let ladder = [mean[0], mean[1], mean[3], mean[4], mean[5]];
    let monotone = ladder.windows(2).all(|w| w[0] <= w[1]);
    let ratio = mean[2] / mean[5];
    if !monotone {
        bad.push("runtime not non-decreasing".into());
    }
    if !(0.3..=0.8).contains(&ratio) {
        bad.push(format!("ratio {ratio:.3} outside [0.3, 0.8]"));
    }
    outcome(
        bad.is_empty(),
        format!(
            "SOLAR2.1 mean runtime (ms) at 0.2/0.4/0.6/0.8/1.0: {}; t(0.5)/t(1) = {ratio:.3}{}",
            ladder.iter().map(|v| format!("{:.1}", v * 1e3)).collect::<Vec<_>>().join("/"),
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------- 9

fn physics() -> Outcome {
    let mut bad = Vec::new();
    let s6 = instance_spec(6).expect("SOLAR6");
    let prep = prepare(s6, &s6.x0, resolution(&s6.window, 1.0));
    let run = prep.plant_run(&mut NoiseStream::quiet(), true).expect("table field");
    let m0 = prep.cycle_config();
    let initial = solar::thermal_loop::PlantState::initial(&m0, prep.design.cold_min_t).total_mass();
    let worst_residual = run.trace.iter().map(|(_, r)| r.energy_residual).fold(0.0, f64::max);
    let worst_mass = run
        .trace
        .iter()
        .map(|(s, _)| ((s.total_mass() - initial) / initial).abs())
        .fold(0.0, f64::max);
    if worst_residual >= 1e-6 {
        bad.push(format!("energy residual {worst_residual:.2e}"));
    }
    if worst_mass >= 1e-9 {
        bad.push(format!("mass drift {worst_mass:.2e}"));
    }
    if run.absorbed_kwh > run.incident_kwh {
        bad.push("plant absorbed more than incident".into());
    }
    let ideal_steps = run.trace.iter().filter(|(_, r)| r.sg_flow > 0.0).count();
    if ideal_steps == 0 || run.trace.iter().any(|(_, r)| r.sg_flow > 0.0 && r.effectiveness != 1.0) {
        bad.push("idealized exchanger effectiveness".into());
    }

    let s4 = instance_spec(4).expect("SOLAR4");
    let prep4 = prepare(s4, &s4.x0, resolution(&s4.window, 0.3));
    let run4 = prep4.plant_run(&mut NoiseStream::quiet(), true).expect("field");
    let real_steps = run4.trace.iter().filter(|(_, r)| r.sg_flow > 0.0).count();
    if real_steps == 0
        || run4
            .trace
            .iter()
            .any(|(_, r)| r.sg_flow > 0.0 && !(r.effectiveness > 0.0 && r.effectiveness < 1.0))
    {
        bad.push("detailed exchanger effectiveness".into());
    }
    for ntu in [0.01, 0.3, 1.0, 3.0, 10.0] {
        for cr in [0.0, 0.2, 0.7, 1.0] {
            for shells in [1, 3] {
                let e = effectiveness(ntu, cr, shells, 2 * shells);
                if !(e > 0.0 && e <= 1.0) {
                    bad.push(format!("effectiveness({ntu}, {cr}, {shells}) = {e}"));
                }
            }
        }
    }
    let mut receiver_cases = 0;
    for &(h, w, n) in &[(12.0, 12.0, 400u32), (6.0, 4.0, 90), (25.0, 20.0, 2000)] {
        let spec = ReceiverSpec {
            aperture_h: h,
            aperture_w: w,
            n_tubes: n,
            d_in: 0.035,
            d_out: 0.04,
            insul_t: 0.3,
        };
        for q in [0.0, 500.0, 5e3, 5e4, 2e5, 1e6] {
            receiver_cases += 1;
            let r = receiver_absorb(&spec, q, 560.0, 850.0);
            if !(r.absorbed_kw >= 0.0 && r.absorbed_kw <= q) {
                bad.push(format!("receiver absorbed {} of {q}", r.absorbed_kw));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "SOLAR6.1 24 h trace: residual {worst_residual:.1e}, mass drift {worst_mass:.1e}; {ideal_steps} idealized and {real_steps} detailed exchanger steps; {receiver_cases} receiver cases{}",
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------- 10

fn area_ha(x: &[f64], limit: f64) -> f64 {
    PI * x[3] * x[3] * (x[9] * x[9] - x[8] * x[8]) * x[7] / 180.0 / 1e4 - limit
}

/// Hand expressions, with `x` 1-based (`x[0]` unused).
fn hand_table(id: u32, x: &[f64]) -> Vec<(&'static str, f64)> {
    let tower = || 2.0 * x[1] - x[3];
    let order = || x[8] - x[9];
    let half_pi = PI / 2.0;
    match id {
        1 => vec![("c2", area_ha(x, 195.0)), ("c3", tower()), ("c4", order())],
        2 => vec![
            ("f1", PI * x[3] * x[3] * (x[9] * x[9] - x[8] * x[8]) * x[7] / 180.0),
            ("c1", area_ha(x, 400.0)),
            ("c4", tower()),
            ("c5", order()),
            // Tubes-fit takes c10 so that c12 stays the simulated one.
            ("c10", x[11] * x[14] - x[5] * half_pi),
            ("c11", x[13] - x[14]),
        ],
        3 => vec![
            ("c1", area_ha(x, 80.0)),
            ("c3", tower()),
            ("c4", order()),
            ("c10", x[18] - x[19]),
            ("c11", x[16] * x[19] - x[5] * half_pi),
        ],
        4 => vec![
            ("c1", area_ha(x, 200.0)),
            ("c3", tower()),
            ("c4", order()),
            ("c10", x[18] - x[19]),
            ("c11", x[16] * x[19] - x[5] * half_pi),
            ("c14", x[22] - x[23]),
            ("c15", x[23] - x[20]),
        ],
        5 => vec![
            ("c6", x[9] - x[10]),
            ("c7", x[7] * x[10] - 6.0 * half_pi),
            ("c10", x[13] - x[14]),
            ("c11", x[14] - x[11]),
        ],
        7 => vec![("c3", x[6] - x[7]), ("c5", x[4] * x[7] - x[2] * half_pi)],
        8 => vec![
            ("c1", area_ha(x, 400.0)),
            ("c2", tower()),
            ("c3", order()),
            ("c6", x[12] - x[13]),
            ("c7", x[10] * x[13] - x[5] * half_pi),
        ],
        9 => vec![
            ("c3", area_ha(x, 500.0)),
            ("c4", tower()),
            ("c5", order()),
            ("c11", x[18] - x[19]),
            ("c12", x[16] * x[19] - x[5] * half_pi),
            ("c15", x[22] - x[23]),
            ("c16", x[23] - x[20]),
        ],
        _ => vec![],
    }
}

fn apriori_oracle() -> Outcome {
    let mut bad = Vec::new();
    let mut compared = 0;
    for s in all_specs() {
        for x in lhs_sample(s, 20, 99) {
            let mut one = vec![0.0];
            one.extend_from_slice(&x.coords);
            let want = hand_table(s.id, &one);
            let got = apriori_eval(s, &x);
            let have: Vec<String> = (0..s.outputs.len())
                .filter(|&k| got.values[k].is_some())
                .map(|k| s.label(k))
                .collect();
            if have != want.iter().map(|(l, _)| l.to_string()).collect::<Vec<_>>() {
                bad.push(format!("{} a-priori outputs {have:?}", s.name));
                break;
            }
            for (label, v) in want {
                compared += 1;
                let k = (0..s.outputs.len()).find(|&k| s.label(k) == label).expect("label");
                let g = got.values[k].expect("closed form");
                let close = (g - v).abs() <= 1e-12 * v.abs().max(1e-300) || g == v;
                if !close || (g > 0.0) != (v > 0.0) {
                    bad.push(format!("{} {label}: {g} vs {v}", s.name));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{compared} values compared{}", if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }))
}

// ---------------------------------------------------------------- 11

fn synthetic_logs() -> (Vec<RunLog>, BTreeMap<String, ProfileProblem>) {
    // (problem, n, per-solver objective traces; NaN marks an infeasible
    // point, None a point that is not counted)
    type Trace = &'static [Option<f64>];
    let plan: [(u32, usize, [Trace; 2]); 3] = [
        (1, 2, [&[Some(10.0), Some(8.0), Some(f64::NAN), Some(3.0), Some(2.5)], &[Some(10.0), None, Some(1.0)]]),
        (2, 3, [&[Some(5.0), Some(5.0), Some(5.0)], &[Some(5.0), Some(4.9), Some(4.0), Some(0.0), Some(-1.0)]]),
        (3, 1, [&[Some(1.0), Some(0.5), Some(0.2), Some(0.0)], &[Some(1.0), None, None, Some(0.9)]]),
    ];
    let mut logs = Vec::new();
    let mut problems = BTreeMap::new();
    for (id, n, traces) in plan {
        for (j, tr) in traces.iter().enumerate() {
            let mut log = RunLog::new(id, ["alpha", "beta"][j], 0, n, 1);
            for v in tr.iter() {
                let y = match v {
                    None => OutputVector::failed(1, 1),
                    Some(f) if f.is_nan() => OutputVector {
                        objectives: vec![0.0],
                        constraints: vec![1.0],
                        cnt_eval: true,
                    },
                    Some(f) => OutputVector {
                        objectives: vec![*f],
                        constraints: vec![-1.0],
                        cnt_eval: true,
                    },
                };
                log.record(y);
            }
            logs.push(log);
        }
        let f_best = logs.iter().filter(|l| l.problem == id).map(|l| l.best()).fold(f64::INFINITY, f64::min);
        let f_start = traces[0][0].expect("counted start");
        problems.insert(format!("{id}#0"), ProfileProblem { n, f_best, f_start });
    }
    (logs, problems)
}

fn brute_time(log: &RunLog, p: &ProfileProblem, tau: f64) -> Option<f64> {
    let target = p.f_best + tau * (p.f_start - p.f_best);
    let mut best = f64::INFINITY;
    let mut counted = 0usize;
    for e in &log.entries {
        if e.y.cnt_eval {
            counted += 1;
        }
        if e.y.cnt_eval && e.y.constraints.iter().all(|&c| c <= 0.0) && !e.y.any_fail() {
            best = best.min(e.y.objectives[0]);
        }
        if best <= target {
            return Some(counted.max(1) as f64);
        }
    }
    None
}

fn profile_oracle() -> Outcome {
    let (logs, problems) = synthetic_logs();
    let alphas: Vec<f64> = (0..=40).map(|k| k as f64 * 0.25).collect();
    let mut bad = Vec::new();
    for tau in [1e-1, 1e-3] {
        let dp = data_profile(&logs, &problems, tau, &alphas).expect("data profile");
        let pp = performance_profile(&logs, &problems, tau, &alphas).expect("performance profile");
        let time = |solver: &str, key: &str| {
            let l = logs.iter().find(|l| l.solver == solver && l.problem_key() == key).expect("log");
            brute_time(l, &problems[key], tau)
        };
        for solver in ["alpha", "beta"] {
            for (i, &a) in alphas.iter().enumerate() {
                let mut d = 0.0;
                let mut r = 0.0;
                for (key, p) in &problems {
                    let t = time(solver, key);
                    let best = [time("alpha", key), time("beta", key)].into_iter().flatten().fold(f64::INFINITY, f64::min);
                    if t.is_some_and(|t| t <= a * (p.n as f64 + 1.0)) {
                        d += 1.0;
                    }
                    if t.is_some_and(|t| t <= a * best) {
                        r += 1.0;
                    }
                }
                let (d, r) = (d / problems.len() as f64, r / problems.len() as f64);
                if dp[solver][i] != (a, d) || pp[solver][i] != (a, r) {
                    bad.push(format!("{solver} tau {tau} alpha {a}"));
                }
            }
        }
    }
    let s10 = instance_spec(10).expect("SOLAR10");
    let st = feasibility_stats(s10, &lhs_sample(s10, 500, 1), &EvalOptions::default());
    let feas_ok = (st.apriori_feasible, st.feasible, st.hidden) == (100.0, 100.0, 0.0);
    if !feas_ok {
        bad.push(format!("SOLAR10.1 feasibility {st:?}"));
    }
    outcome(
        bad.is_empty(),
        format!(
            "profiles match the linear scan at {} abscissae; SOLAR10.1 {}/{}/{} over 500 points{}",
            alphas.len(),
            st.apriori_feasible,
            st.feasible,
            st.hidden,
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------- 12

fn non_triviality(sz: &Sizes) -> Outcome {
    let mut bad = Vec::new();
    let mut rows = Vec::new();
    for id in [1u32, 2, 3, 4, 6, 7, 8, 9] {
        let s = instance_spec(id).expect("instance");
        let st = feasibility_stats(s, &lhs_sample(s, sz.lhs, 12), &options(s, 0, 0.3));
        rows.push(format!("{}:{:.2}%", s.name, st.feasible));
        let ok = match id {
            1 | 6 | 7 => st.feasible > 0.0,
            _ => st.feasible < 15.0,
        };
        if !ok {
            bad.push(s.name);
        }
    }
    outcome(bad.is_empty(), format!("{} LHS points each, feasible: {}; off target: {bad:?}", sz.lhs, rows.join(" ")))
}

fn main() {
    let sz = Sizes::from_env();
    let strict = std::env::var("SOLAR_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    println!("acceptance ({} sizes)", if sz.full { "full" } else { "reduced" });
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("instance metadata", Box::new(metadata)),
        ("analytic objective", Box::new(analytic_objective)),
        ("penalty composition", Box::new(penalty_composition)),
        ("determinism", Box::new(determinism)),
        ("replication semantics", Box::new(replication_semantics)),
        ("failure semantics", Box::new(failure_semantics)),
        ("seed invariance", Box::new(|| seed_invariance(&sz))),
        ("fidelity behaviour", Box::new(fidelity_behaviour)),
        ("physics properties", Box::new(physics)),
        ("a-priori oracle", Box::new(apriori_oracle)),
        ("harness oracle", Box::new(profile_oracle)),
        ("non-triviality", Box::new(|| non_triviality(&sz))),
    ];
    let only: Option<Vec<usize>> = std::env::var("SOLAR_ACCEPTANCE_ONLY")
        .ok()
        .map(|v| v.split(',').filter_map(|k| k.trim().parse().ok()).collect());
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if only.as_ref().is_some_and(|o| !o.contains(&(i + 1))) {
            continue;
        }
        ran += 1;
        let t = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<22} {} ({:.1}s) {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("{} of {ran} criteria pass", ran - failed);
    if strict && failed > 0 {
        std::process::exit(1);
    }
}
