//! Evaluate one instance at its start point (or at the values given after
//! the id) and print every output with its meaning.
//!
//! ```text
//! cargo run --release --example evaluate_point -- 3 [x1 x2 ...]
//! ```

use solar::evaluator::evaluate;
use solar::instances::instance_spec;
use solar::model::{DesignPoint, EvalOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let id: u32 = args.next().map(|s| s.parse().expect("instance id")).unwrap_or(1);
    let spec = instance_spec(id).expect("instance id between 1 and 10");
    let given: Vec<f64> = args.map(|s| s.parse().expect("number")).collect();
    let x = if given.is_empty() { spec.x0.clone() } else { DesignPoint::new(given) };
    let fid = if spec.multifidelity { 0.5 } else { 1.0 };
    let r = evaluate(id, &x, &EvalOptions::default().with_fidelity(fid)).expect("valid request");
    println!("{} at fidelity {fid}: cnt_eval={} in {:.2?}", spec.name, r.cnt_eval, r.wall_time);
    for (k, (v, o)) in r.y.values().iter().zip(&spec.outputs).enumerate() {
        let state = if k < spec.p {
            ""
        } else if *v <= 0.0 {
            "ok"
        } else {
            "violated"
        };
        println!("  {:>4} {:>24} {:>8}  {}", spec.label(k), v, state, o.description);
    }
}
