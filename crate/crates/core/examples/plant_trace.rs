//! Minute-by-minute trace of the SOLAR6 plant at its start point, as CSV.
//!
//! ```text
//! cargo run --release --example plant_trace -- [out.csv]
//! ```

use std::fs::File;
use std::io::{BufWriter, Write};

use solar::instances::{instance_spec, prepare};
use solar::simulation::{resolution, NoiseStream};
use solar::thermal_loop::write_trace;

fn main() -> std::io::Result<()> {
    let spec = instance_spec(6).expect("SOLAR6");
    let prep = prepare(spec, &spec.x0, resolution(&spec.window, 1.0));
    let run = prep.plant_run(&mut NoiseStream::quiet(), true).expect("table-driven field");
    let out: Box<dyn Write> = match std::env::args().nth(1) {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    };
    write_trace(out, &run.trace, &prep.design.hot_tank(), &prep.design.cold_tank())?;
    eprintln!(
        "electric {:.0} kWh of {:.0} demanded, max residual {:.1e}, mass drift {:.1e}",
        run.electric_kwh, run.demand_kwh, run.max_residual, run.mass_drift
    );
    Ok(())
}
