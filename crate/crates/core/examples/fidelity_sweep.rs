//! Runtime and outputs of a multifidelity instance as the fidelity varies.
//!
//! ```text
//! cargo run --release --example fidelity_sweep -- [id]
//! ```

use std::time::Instant;

use solar::evaluator::evaluate;
use solar::instances::instance_spec;
use solar::model::EvalOptions;
use solar::simulation::resolution;

fn main() {
    let id: u32 = std::env::args().nth(1).map(|s| s.parse().expect("instance id")).unwrap_or(2);
    let spec = instance_spec(id).expect("instance id between 1 and 10");
    assert!(spec.multifidelity, "{} has a single fidelity", spec.name);
    println!("{:>5} {:>6} {:>5} {:>9}  outputs", "fid", "steps", "rays", "ms");
    for k in 0..=10 {
        let fid = k as f64 / 10.0;
        let res = resolution(&spec.window, fid);
        let t = Instant::now();
        let r = evaluate(id, &spec.x0, &EvalOptions::default().with_fidelity(fid)).expect("start point");
        let ms = t.elapsed().as_secs_f64() * 1e3;
        let shown: Vec<String> = r.y.values().iter().take(4).map(|v| format!("{v:.5e}")).collect();
        println!("{fid:>5.1} {:>6} {:>5} {ms:>9.2}  {}", res.steps, res.rays, shown.join(" "));
    }
}
