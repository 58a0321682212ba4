//! Regenerate the hourly field tables behind SOLAR5 and SOLAR6.
//!
//! ```text
//! cargo run --release --example generate_field_tables -- crates/core/data
//! ```

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use solar::heliofield::RAYS_FULL;
use solar::instances::{instance_spec, SOLAR5_FIELD, SOLAR6_FIELD};
use solar::simulation::trace_field;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "crates/core/data".into()));
    for (id, design, file) in [(5, SOLAR5_FIELD, "solar5_field.csv"), (6, SOLAR6_FIELD, "solar6_field.csv")] {
        let window = instance_spec(id).expect("known instance").window;
        let run = trace_field(&design, &window, RAYS_FULL).expect("fixed field is valid");
        let mut out = BufWriter::new(File::create(dir.join(file))?);
        writeln!(out, "# hour,incident_kW")?;
        for (h, kw) in run.hourly_kw.iter().enumerate() {
            writeln!(out, "{h},{kw}")?;
        }
        let peak = run.hourly_kw.iter().cloned().fold(0.0, f64::max);
        println!("{file}: {} heliostats, peak {:.0} kW", run.heliostats, peak);
    }
    Ok(())
}
