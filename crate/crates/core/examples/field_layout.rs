//! Heliostat positions chosen for a SOLAR1 design, as CSV, for two
//! receiver widths.
//!
//! ```text
//! cargo run --release --example field_layout -- [out_prefix]
//! ```

use std::fs::File;
use std::io::BufWriter;

use solar::heliofield::{generate_grid_nearest, rate_positions, select_heliostats, write_layout_csv, OpticalParams};
use solar::instances::instance_spec;
use solar::simulation::Window;

fn main() -> std::io::Result<()> {
    let prefix = std::env::args().nth(1).unwrap_or_else(|| "field".into());
    let spec = instance_spec(1).expect("SOLAR1");
    let window = Window { day: 100, hours: 24 };
    let suns: Vec<_> = (0..=24).map(|h| window.sun(h as f64).direction).collect();
    for width in [3.0, 15.0] {
        let mut d = spec.design(&spec.x0);
        d.rcv_w = width;
        let params = d.field();
        let layout = generate_grid_nearest(&params, 3 * d.n_heliostats as usize + 1000).expect("valid radii");
        let rated = rate_positions(&layout, &d.aperture(), &suns, &OpticalParams::default());
        let sel = select_heliostats(&params, rated, d.n_heliostats, layout.capacity());
        let path = format!("{prefix}_w{width}.csv");
        write_layout_csv(BufWriter::new(File::create(&path)?), &sel.heliostats)?;
        let mean = sel.heliostats.iter().map(|h| h.efficiency).sum::<f64>() / sel.heliostats.len() as f64;
        println!("{path}: {} heliostats, mean rating {mean:.3}", sel.heliostats.len());
    }
    Ok(())
}
