//! Evaluate every instance at its suggested start point.
//!
//! ```text
//! cargo run --release --example start_points -- [fidelity] [ids...]
//! ```

use solar::evaluator::evaluate;
use solar::instances::{all_specs, OutputClass};
use solar::model::{format_value, EvalOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let fid: f64 = args.next().map(|s| s.parse().expect("fidelity")).unwrap_or(1.0);
    let ids: Vec<u32> = args.map(|s| s.parse().expect("instance id")).collect();
    for spec in all_specs().filter(|s| ids.is_empty() || ids.contains(&s.id)) {
        let f = if spec.multifidelity { fid } else { 1.0 };
        let opts = EvalOptions::default().with_fidelity(f);
        let r = evaluate(spec.id, &spec.x0, &opts).expect("start point has the right size");
        println!(
            "{} (fid {f}) cnt_eval={} in {:.2}s",
            spec.name,
            r.cnt_eval,
            r.wall_time.as_secs_f64()
        );
        for (k, v) in r.y.values().iter().enumerate() {
            let o = &spec.outputs[k];
            let tag = match o.class {
                OutputClass::Apriori => "A",
                OutputClass::Deterministic => "D",
                OutputClass::Stochastic => "S",
            };
            println!("  {:>4} {tag} {:>14}  {}", spec.label(k), format_value(*v), o.description);
        }
    }
}
