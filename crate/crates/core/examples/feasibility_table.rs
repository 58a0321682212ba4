//! Latin hypercube feasibility screening of the instances.
//!
//! ```text
//! cargo run --release --example feasibility_table -- [samples] [fidelity] [ids...]
//! ```

use std::time::Instant;

use solar::bench::{feasibility_stats, lhs_sample};
use solar::instances::all_specs;
use solar::model::EvalOptions;

fn main() {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().map(|s| s.parse().expect("sample count")).unwrap_or(200);
    let fid: f64 = args.next().map(|s| s.parse().expect("fidelity")).unwrap_or(0.3);
    let ids: Vec<u32> = args.map(|s| s.parse().expect("instance id")).collect();
    println!("{:<10} {:>8} {:>8} {:>8} {:>8}", "instance", "feas.AP", "feas.", "hidden", "secs");
    for spec in all_specs().filter(|s| ids.is_empty() || ids.contains(&s.id)) {
        let f = if spec.multifidelity { fid } else { 1.0 };
        let t = Instant::now();
        let pts = lhs_sample(spec, k, 2024);
        let s = feasibility_stats(spec, &pts, &EvalOptions::default().with_fidelity(f));
        println!(
            "{:<10} {:>8.2} {:>8.2} {:>8.2} {:>8.1}",
            spec.name,
            s.apriori_feasible,
            s.feasible,
            s.hidden,
            t.elapsed().as_secs_f64()
        );
    }
}
