//! Radially staggered heliostat grid.
//!
//! Rings sit at `R_lo + (k + 1/2) * 1.4 * DM` where `DM` is the heliostat
//! diagonal. Rings are grouped in zones sharing one azimuthal pitch, taken as
//! the smallest angle keeping neighbours one diagonal apart on the zone's
//! base radius. The first zone is based on the inner radius of the annulus
//! and a new zone starts once a ring reaches twice the current base radius.
//! Odd rings are shifted by half a pitch.

/// Ring spacing as a multiple of the heliostat diagonal.
pub const RING_SPACING_FACTOR: f64 = 1.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldParams {
    /// Heliostat width (m).
    pub heliostat_w: f64,
    /// Heliostat length, vertical when the mirror faces the horizon (m).
    pub heliostat_l: f64,
    /// Tower height (m).
    pub tower_h: f64,
    /// Half angle of the field sector measured from north (deg).
    pub angular_width: f64,
    /// Inner radius as a multiple of the tower height.
    pub r_min: f64,
    /// Outer radius as a multiple of the tower height.
    pub r_max: f64,
}

impl FieldParams {
    pub fn diagonal(&self) -> f64 {
        (self.heliostat_w * self.heliostat_w + self.heliostat_l * self.heliostat_l).sqrt()
    }

    pub fn ring_spacing(&self) -> f64 {
        RING_SPACING_FACTOR * self.diagonal()
    }

    /// Height of the mirror centre above ground (m).
    pub fn mirror_height(&self) -> f64 {
        0.5 * self.heliostat_l + 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPosition {
    /// East coordinate (m), tower at the origin.
    pub x: f64,
    /// North coordinate (m).
    pub y: f64,
    /// Radius (m).
    pub r: f64,
    /// Azimuth from north, positive toward east (deg).
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldLayout {
    pub params: FieldParams,
    /// Positions in ring order, nearest first. May stop short of the full
    /// grid, see [`generate_grid_nearest`].
    pub positions: Vec<GridPosition>,
    /// Number of positions in the full grid.
    pub total: usize,
}

impl FieldLayout {
    pub fn capacity(&self) -> usize {
        self.total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("the inner field radius is zero, so the first zone has no azimuthal pitch")]
    ZeroInnerRadius,
}

/// Azimuthal pitch (rad) keeping chord length `dm` at radius `r`.
fn pitch_at(dm: f64, r: f64) -> f64 {
    2.0 * libm::asin((dm / (2.0 * r)).min(1.0))
}

/// Lay out the grid. An empty annulus gives capacity 0.
pub fn generate_grid(params: &FieldParams) -> Result<FieldLayout, GridError> {
    generate_grid_nearest(params, usize::MAX)
}

/// Like [`generate_grid`] but only materializes whole rings until at least
/// `keep` positions are stored. The capacity still counts every ring.
pub fn generate_grid_nearest(params: &FieldParams, keep: usize) -> Result<FieldLayout, GridError> {
    let r_lo = params.r_min * params.tower_h;
    let r_hi = params.r_max * params.tower_h;
    if r_lo <= 0.0 {
        return Err(GridError::ZeroInnerRadius);
    }
    let dm = params.diagonal();
    let dr = params.ring_spacing();
    let theta = params.angular_width.to_radians();
    let mut positions = Vec::new();
    let mut total = 0usize;
    let mut base = r_lo;
    let mut pitch = pitch_at(dm, base);
    let mut k: u64 = 0;
    loop {
        let r = r_lo + (k as f64 + 0.5) * dr;
        if r > r_hi {
            break;
        }
        if r >= 2.0 * base {
            base = r;
            pitch = pitch_at(dm, base);
        }
        let shift = if k % 2 == 1 { 0.5 } else { 0.0 };
        // Angles (j + shift) * pitch within [-theta, theta].
        let j_lo = libm::ceil(-theta / pitch - shift) as i64;
        let j_hi = libm::floor(theta / pitch - shift) as i64;
        let store = positions.len() < keep;
        for j in j_lo..=j_hi {
            let psi = (j as f64 + shift) * pitch;
            if psi.abs() > theta {
                continue;
            }
            total += 1;
            if store {
                positions.push(GridPosition {
                    x: r * libm::sin(psi),
                    y: r * libm::cos(psi),
                    r,
                    psi: psi.to_degrees(),
                });
            }
        }
        k += 1;
    }
    Ok(FieldLayout {
        params: *params,
        positions,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(h: f64, rmin: f64, rmax: f64) -> FieldParams {
        FieldParams {
            heliostat_w: 10.0,
            heliostat_l: 10.0,
            tower_h: h,
            angular_width: 89.0,
            r_min: rmin,
            r_max: rmax,
        }
    }

    #[test]
    fn empty_annulus() {
        assert_eq!(generate_grid(&params(100.0, 2.0, 2.0)).unwrap().capacity(), 0);
    }

    #[test]
    fn taller_tower_more_room() {
        let a = generate_grid(&params(120.0, 1.0, 6.0)).unwrap().capacity();
        let b = generate_grid(&params(70.0, 1.0, 6.0)).unwrap().capacity();
        assert!(a > b);
    }

    #[test]
    fn nearest_rings_only() {
        let p = params(100.0, 1.0, 8.0);
        let full = generate_grid(&p).unwrap();
        let part = generate_grid_nearest(&p, 50).unwrap();
        assert_eq!(part.capacity(), full.capacity());
        assert!(part.positions.len() >= 50 && part.positions.len() < full.positions.len());
        assert_eq!(part.positions[..], full.positions[..part.positions.len()]);
    }

    #[test]
    fn zero_inner_radius_rejected() {
        assert_eq!(generate_grid(&params(100.0, 0.0, 5.0)), Err(GridError::ZeroInnerRadius));
    }

    #[test]
    fn positions_in_sector_and_apart() {
        let p = params(60.0, 0.8, 3.0);
        let g = generate_grid(&p).unwrap();
        let dm = p.diagonal();
        for (i, a) in g.positions.iter().enumerate() {
            assert!(a.r >= 0.8 * 60.0 && a.r <= 3.0 * 60.0);
            assert!(a.psi.abs() <= 89.0 + 1e-9);
            for b in &g.positions[i + 1..] {
                let d = ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt();
                assert!(d >= dm * (1.0 - 1e-9), "{d} < {dm}");
            }
        }
    }
}
