//! Position rating, heliostat selection and the flux ray tracer.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::grid::{FieldLayout, FieldParams, GridPosition};
use crate::vec3::Vec3;

/// Mirror reflectivity.
pub const REFLECTIVITY: f64 = 0.95;
/// Direct normal irradiance (kW/m^2).
pub const DNI: f64 = 1.0;
/// Rays per heliostat at full fidelity.
pub const RAYS_FULL: u32 = 64;
/// Shading partners are searched within this many heliostat diagonals.
const SHADING_REACH: f64 = 6.0;

/// Clear-day atmospheric transmittance over a slant range `d` (m).
///
/// Quadratic fit up to 1 km and its exponential continuation beyond, which
/// keeps the curve continuous and decreasing.
pub fn attenuation(d: f64) -> f64 {
    let t = if d <= 1000.0 {
        0.99321 - 0.0001176 * d + 1.97e-8 * d * d
    } else {
        libm::exp(-0.0001106 * d)
    };
    t.clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attenuation {
    ClearDay,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalParams {
    pub reflectivity: f64,
    pub dni: f64,
    pub attenuation: Attenuation,
}

impl Default for OpticalParams {
    fn default() -> Self {
        OpticalParams {
            reflectivity: REFLECTIVITY,
            dni: DNI,
            attenuation: Attenuation::ClearDay,
        }
    }
}

impl OpticalParams {
    fn tau(&self, d: f64) -> f64 {
        match self.attenuation {
            Attenuation::ClearDay => attenuation(d),
            Attenuation::None => 1.0,
        }
    }
}

/// Receiver aperture: a vertical rectangle in the plane `y = 0` facing north,
/// centred at height `center_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aperture {
    pub height: f64,
    pub width: f64,
    pub center_z: f64,
}

impl Aperture {
    fn center(&self) -> Vec3 {
        Vec3::new(0.0, 0.0, self.center_z)
    }
}

/// Orientation of a flat mirror aimed at the aperture centre.
#[derive(Debug, Clone, Copy)]
struct Facet {
    normal: Vec3,
    /// Horizontal axis spanning the width.
    ew: Vec3,
    /// Axis spanning the length.
    el: Vec3,
    /// cos of the incidence angle on the mirror.
    cos_inc: f64,
    /// Unit vector from the mirror centre to the aperture centre.
    to_rcv: Vec3,
    slant: f64,
}

fn facet(center: Vec3, target: Vec3, sun: Vec3) -> Facet {
    let d = target - center;
    let slant = d.norm();
    let to_rcv = d * (1.0 / slant);
    let bis = sun + to_rcv;
    let normal = if bis.norm() < 1e-12 { to_rcv } else { bis.normalized() };
    let up = Vec3::new(0.0, 0.0, 1.0);
    let h = up.cross(normal);
    let ew = if h.norm() < 1e-12 { Vec3::new(1.0, 0.0, 0.0) } else { h.normalized() };
    let el = normal.cross(ew);
    Facet {
        normal,
        ew,
        el,
        cos_inc: normal.dot(sun).max(0.0),
        to_rcv,
        slant,
    }
}

/// Project `v` onto the aperture plane along direction `dir`, returning the
/// (x, z) offset.
fn project(v: Vec3, dir: Vec3) -> (f64, f64) {
    let t = v.y / dir.y;
    (v.x - t * dir.x, v.z - t * dir.z)
}

/// Instantaneous optical efficiency of one grid position without shading.
///
/// Spillage uses the bounding rectangle of the mirror image projected along
/// the reflected beam onto the aperture plane.
pub fn position_efficiency(
    field: &FieldParams,
    pos: &GridPosition,
    aperture: &Aperture,
    sun: Vec3,
    optics: &OpticalParams,
) -> f64 {
    if sun.z <= 0.0 {
        return 0.0;
    }
    let c = Vec3::new(pos.x, pos.y, field.mirror_height());
    let f = facet(c, aperture.center(), sun);
    if f.to_rcv.y >= 0.0 {
        return 0.0;
    }
    let a = project(f.ew * (0.5 * field.heliostat_w), f.to_rcv);
    let b = project(f.el * (0.5 * field.heliostat_l), f.to_rcv);
    let hx = a.0.abs() + b.0.abs();
    let hz = a.1.abs() + b.1.abs();
    let fx = if hx > 0.0 { (0.5 * aperture.width / hx).min(1.0) } else { 1.0 };
    let fz = if hz > 0.0 { (0.5 * aperture.height / hz).min(1.0) } else { 1.0 };
    let eta = f.cos_inc * fx * fz * optics.tau(f.slant);
    eta.clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatedPosition {
    pub position: GridPosition,
    pub efficiency: f64,
}

/// Average efficiency of every grid position over the given sun directions
/// (only those above the horizon count).
pub fn rate_positions(
    layout: &FieldLayout,
    aperture: &Aperture,
    suns: &[Vec3],
    optics: &OpticalParams,
) -> Vec<RatedPosition> {
    let up: Vec<Vec3> = suns.iter().copied().filter(|s| s.z > 0.0).collect();
    layout
        .positions
        .iter()
        .map(|p| {
            let mut s = 0.0;
            for &sun in &up {
                s += position_efficiency(&layout.params, p, aperture, sun, optics);
            }
            let efficiency = if up.is_empty() { 0.0 } else { s / up.len() as f64 };
            RatedPosition {
                position: *p,
                efficiency,
            }
        })
        .collect()
}

fn rank(a: &RatedPosition, b: &RatedPosition) -> Ordering {
    b.efficiency
        .total_cmp(&a.efficiency)
        .then(a.position.r.total_cmp(&b.position.r))
        .then(a.position.psi.total_cmp(&b.position.psi))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSelection {
    pub params: FieldParams,
    /// Selected positions, best first.
    pub heliostats: Vec<RatedPosition>,
    /// Requested count minus grid capacity; positive means they do not fit.
    pub fit_slack: f64,
}

impl FieldSelection {
    pub fn mirror_area(&self) -> f64 {
        self.heliostats.len() as f64 * self.params.heliostat_w * self.params.heliostat_l
    }
}

/// Keep the `n` best rated positions.
/// `capacity` is the full grid size, which may exceed `rated.len()` when only
/// the nearest rings were rated.
pub fn select_heliostats(params: &FieldParams, mut rated: Vec<RatedPosition>, n: u64, capacity: usize) -> FieldSelection {
    let keep = (n.min(usize::MAX as u64) as usize).min(rated.len());
    if keep > 0 && keep < rated.len() {
        rated.select_nth_unstable_by(keep - 1, rank);
        rated.truncate(keep);
    }
    if keep == 0 {
        rated.clear();
    }
    rated.sort_by(rank);
    FieldSelection {
        params: *params,
        heliostats: rated,
        fit_slack: n as f64 - capacity as f64,
    }
}

/// Precomputed geometry for tracing one selection many times.
pub struct Tracer<'a> {
    sel: &'a FieldSelection,
    centers: Vec<Vec3>,
    cells: HashMap<(i64, i64), Vec<u32>>,
    cell: f64,
}

impl<'a> Tracer<'a> {
    pub fn new(sel: &'a FieldSelection) -> Self {
        let p = &sel.params;
        let cell = 2.0 * p.diagonal();
        let z = p.mirror_height();
        let centers: Vec<Vec3> = sel
            .heliostats
            .iter()
            .map(|h| Vec3::new(h.position.x, h.position.y, z))
            .collect();
        let mut cells: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
        for (i, c) in centers.iter().enumerate() {
            let key = (libm::floor(c.x / cell) as i64, libm::floor(c.y / cell) as i64);
            cells.entry(key).or_default().push(i as u32);
        }
        Tracer {
            sel,
            centers,
            cells,
            cell,
        }
    }

    /// Power (kW) reaching the aperture for one sun direction with `rays`
    /// stratified rays per heliostat.
    pub fn power(&self, aperture: &Aperture, sun: Vec3, rays: u32, optics: &OpticalParams) -> f64 {
        if sun.z <= 0.0 || self.centers.is_empty() {
            return 0.0;
        }
        let p = &self.sel.params;
        let (w, l) = (p.heliostat_w, p.heliostat_l);
        let dm = p.diagonal();
        let target = aperture.center();
        let facets: Vec<Facet> = self.centers.iter().map(|&c| facet(c, target, sun)).collect();
        let offsets = ray_offsets(rays.max(1), w, l);
        let ray_area = w * l / offsets.len() as f64;
        // Shadows reach about (top of mirror) / tan(elevation).
        let top = p.mirror_height() + 0.5 * l;
        let horiz = (sun.x * sun.x + sun.y * sun.y).sqrt();
        let reach = (top * horiz / sun.z + dm).min(SHADING_REACH * dm);
        let span = libm::ceil(reach / self.cell) as i64;
        let mut total = 0.0;
        let mut partners: Vec<u32> = Vec::new();
        for (i, (c, f)) in self.centers.iter().zip(&facets).enumerate() {
            if f.to_rcv.y >= 0.0 || f.cos_inc <= 0.0 {
                continue;
            }
            partners.clear();
            let cx = libm::floor(c.x / self.cell) as i64;
            let cy = libm::floor(c.y / self.cell) as i64;
            for gx in cx - span..=cx + span {
                for gy in cy - span..=cy + span {
                    if let Some(list) = self.cells.get(&(gx, gy)) {
                        for &j in list {
                            if j as usize == i {
                                continue;
                            }
                            let d = self.centers[j as usize] - *c;
                            let along = d.dot(sun);
                            if along <= 0.0 || along > reach + dm {
                                continue;
                            }
                            let perp2 = d.dot(d) - along * along;
                            if perp2 < dm * dm {
                                partners.push(j);
                            }
                        }
                    }
                }
            }
            partners.sort_unstable();
            let r = f.to_rcv;
            let mut hits = 0u32;
            for &(u, v) in &offsets {
                let q = *c + f.ew * u + f.el * v;
                // Reflected ray from q travels along r for a flat mirror.
                let t = -q.y / r.y;
                let hx = q.x + t * r.x;
                let hz = q.z + t * r.z - aperture.center_z;
                if hx.abs() > 0.5 * aperture.width || hz.abs() > 0.5 * aperture.height {
                    continue;
                }
                if partners.iter().any(|&j| shades(&facets[j as usize], self.centers[j as usize], q, sun, w, l)) {
                    continue;
                }
                hits += 1;
            }
            total += hits as f64 * ray_area * f.cos_inc * optics.dni * optics.reflectivity * optics.tau(f.slant);
        }
        total
    }
}

fn shades(f: &Facet, c: Vec3, q: Vec3, sun: Vec3, w: f64, l: f64) -> bool {
    let denom = sun.dot(f.normal);
    if denom.abs() < 1e-12 {
        return false;
    }
    let lambda = (c - q).dot(f.normal) / denom;
    if lambda <= 0.0 {
        return false;
    }
    let hit = q + sun * lambda - c;
    hit.dot(f.ew).abs() <= 0.5 * w && hit.dot(f.el).abs() <= 0.5 * l
}

/// Cell centres of an `nx x ny` grid over the mirror, first `n` in row order.
fn ray_offsets(n: u32, w: f64, l: f64) -> Vec<(f64, f64)> {
    let nx = libm::ceil((n as f64).sqrt()) as u32;
    let ny = n.div_ceil(nx);
    let mut out = Vec::with_capacity(n as usize);
    'outer: for j in 0..ny {
        for i in 0..nx {
            if out.len() == n as usize {
                break 'outer;
            }
            let u = w * ((i as f64 + 0.5) / nx as f64 - 0.5);
            let v = l * ((j as f64 + 0.5) / ny as f64 - 0.5);
            out.push((u, v));
        }
    }
    out
}

/// One-shot convenience wrapper around [`Tracer`].
pub fn field_power(
    sel: &FieldSelection,
    aperture: &Aperture,
    sun: Vec3,
    rays: u32,
    optics: &OpticalParams,
) -> f64 {
    Tracer::new(sel).power(aperture, sun, rays, optics)
}
