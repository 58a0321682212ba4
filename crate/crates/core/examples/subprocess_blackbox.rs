//! Drive the `solar` executable (or any program with the same file
//! protocol) as an external blackbox.
//!
//! ```text
//! cargo build --release && cargo run --release --example subprocess_blackbox -- target/release/solar [id]
//! ```

use solar::bench::{lhs_sample, Blackbox, SubprocessBlackbox};
use solar::instances::instance_spec;

fn main() {
    let mut args = std::env::args().skip(1);
    let program = args.next().unwrap_or_else(|| "target/release/solar".into());
    let id: u32 = args.next().map(|s| s.parse().expect("instance id")).unwrap_or(6);
    let spec = instance_spec(id).expect("instance id between 1 and 10");
    let mut bb = SubprocessBlackbox::new(&program, id, spec.p);
    if spec.multifidelity {
        bb.trailing.push("-fid=0.2".into());
    }
    for x in std::iter::once(spec.x0.clone()).chain(lhs_sample(spec, 4, 3)) {
        match bb.evaluate(&x) {
            Ok(y) => println!("cnt_eval={} feasible={} f1={:e}", y.cnt_eval, y.is_feasible(), y.objectives[0]),
            Err(e) => {
                eprintln!("{program}: {e}");
                std::process::exit(1);
            }
        }
    }
}
