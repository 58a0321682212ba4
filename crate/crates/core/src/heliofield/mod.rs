//! Heliostat field: grid layout, sun position, position rating, selection
//! and ray-traced flux on the receiver aperture.

mod grid;
mod optics;
mod sun;

pub use grid::{generate_grid, generate_grid_nearest, FieldLayout, FieldParams, GridError, GridPosition, RING_SPACING_FACTOR};
pub use optics::{
    attenuation, field_power, position_efficiency, rate_positions, select_heliostats, Aperture,
    Attenuation, FieldSelection, OpticalParams, RatedPosition, Tracer, DNI, RAYS_FULL, REFLECTIVITY,
};
pub use sun::{declination, sun_position, SunState};

use std::io::Write;

/// Write a `x_m,y_m,avg_eta` CSV of rated positions.
pub fn write_layout_csv<W: Write>(mut out: W, rated: &[RatedPosition]) -> std::io::Result<()> {
    writeln!(out, "x_m,y_m,avg_eta")?;
    for r in rated {
        writeln!(out, "{},{},{}", r.position.x, r.position.y, r.efficiency)?;
    }
    Ok(())
}
