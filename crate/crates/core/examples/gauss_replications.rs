//! How many replications the Gauss stopping rule asks for as the target
//! probability grows, against plain fixed averaging.
//!
//! ```text
//! cargo run --release --example gauss_replications -- [id]
//! ```

use solar::evaluator::evaluate;
use solar::instances::instance_spec;
use solar::model::{EvalOptions, Replications};

fn main() {
    let id: u32 = std::env::args().nth(1).map(|s| s.parse().expect("instance id")).unwrap_or(7);
    let spec = instance_spec(id).expect("instance id between 1 and 10");
    let fid = if spec.multifidelity { 0.1 } else { 1.0 };
    for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let o = EvalOptions::new(0, Replications::Gauss(r), fid).expect("valid options");
        let res = evaluate(id, &spec.x0, &o).expect("start point");
        println!(
            "r={r:.1}: {:>6} replications, f1 = {:.6e} ({:.2?})",
            res.replications_used, res.y.objectives[0], res.wall_time
        );
    }
    for k in [1, 10, 100] {
        let o = EvalOptions::default().with_fidelity(fid).with_reps(k);
        let res = evaluate(id, &spec.x0, &o).expect("start point");
        println!("fixed {k:>3}: f1 = {:.6e}", res.y.objectives[0]);
    }
}
