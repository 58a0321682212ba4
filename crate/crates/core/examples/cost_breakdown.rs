//! Investment cost of every instance's start point by component, and the
//! turbine catalogue.
//!
//! ```text
//! cargo run --release --example cost_breakdown
//! ```

use solar::economics::{total_cost, CostScope};
use solar::instances::all_specs;
use solar::powerblock::catalogue;

fn main() {
    let all = CostScope {
        field: true,
        receiver: true,
        storage: true,
        power_block: true,
    };
    println!(
        "{:<10} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>14}",
        "instance", "heliostats", "tower", "receiver", "hot", "cold", "sg", "turbine", "total $"
    );
    for spec in all_specs() {
        let c = total_cost(&spec.design(&spec.x0), all);
        println!(
            "{:<10} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>14.6e}",
            spec.name, c.heliostats, c.tower, c.receiver, c.hot_storage, c.cold_storage, c.steam_generator, c.turbine, c.total
        );
    }
    println!("\n{:>4} {:>8} {:>8} {:>10} {:>10} {:>12} {:>7}", "type", "T_in K", "p MPa", "P_max kW", "P_min kW", "cost $", "eta");
    for t in catalogue() {
        println!(
            "{:>4} {:>8} {:>8} {:>10} {:>10} {:>12} {:>7.3}",
            t.id, t.inlet_t, t.inlet_p, t.p_max, t.p_min, t.cost, t.eta_max()
        );
    }
}
