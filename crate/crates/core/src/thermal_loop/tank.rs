//! Storage tank heat losses.
//!
//! Three channels leave the salt: conduction through the floor, conduction
//! through the wetted wall, and radiation from the free surface to the
//! ceiling and the dry part of the wall. The ceiling and dry wall lose that
//! heat through the same insulation to the outside air. Outer surfaces lose
//! heat by forced convection at a 6 m/s wind plus radiation linearised at
//! ambient temperature.

use super::salt::{RHO, SIGMA};
use std::f64::consts::PI;

/// Insulation conductivity (W/m K).
const K_INSULATION: f64 = 0.06;
/// Foundation resistance below the floor insulation (m^2 K/W).
const R_FOUNDATION: f64 = 0.8;
/// Wind speed over the tanks (m/s).
pub const WIND_SPEED: f64 = 6.0;
const EPS_SALT: f64 = 0.9;
const EPS_STEEL: f64 = 0.8;
const EPS_CLADDING: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TankSpec {
    pub insul_t: f64,
    pub height: f64,
    pub diameter: f64,
}

impl TankSpec {
    pub fn floor_area(&self) -> f64 {
        0.25 * PI * self.diameter * self.diameter
    }

    pub fn volume(&self) -> f64 {
        self.floor_area() * self.height
    }

    /// Salt mass when full (kg).
    pub fn capacity_mass(&self) -> f64 {
        self.volume() * RHO
    }

    pub fn level_of(&self, mass: f64) -> f64 {
        mass / (RHO * self.floor_area())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TankState {
    /// Salt mass (kg).
    pub mass: f64,
    /// Mixed salt temperature (K).
    pub temp: f64,
}

impl TankState {
    pub fn level(&self, spec: &TankSpec) -> f64 {
        spec.level_of(self.mass)
    }
}

/// Loss breakdown (kW).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TankLosses {
    pub bottom: f64,
    pub wet_wall: f64,
    /// Radiation from the salt surface to the ceiling.
    pub top_to_ceiling: f64,
    /// Radiation from the salt surface to the dry wall.
    pub top_to_dry_wall: f64,
    /// Temperature of the ceiling and dry wall (K).
    pub enclosure_t: f64,
    pub exterior_convection: f64,
    pub exterior_radiation: f64,
}

impl TankLosses {
    /// Heat leaving the salt.
    pub fn total(&self) -> f64 {
        self.bottom + self.wet_wall + self.top_to_ceiling + self.top_to_dry_wall
    }
}

fn h_convection() -> f64 {
    5.7 + 3.8 * WIND_SPEED
}

fn h_radiation(ambient: f64) -> f64 {
    4.0 * EPS_CLADDING * SIGMA * ambient * ambient * ambient
}

pub fn tank_losses(spec: &TankSpec, state: &TankState, ambient: f64) -> TankLosses {
    if state.mass <= 0.0 {
        return TankLosses {
            enclosure_t: ambient,
            ..Default::default()
        };
    }
    let h_out = h_convection() + h_radiation(ambient);
    let conv_share = h_convection() / h_out;
    let dt = state.temp - ambient;
    let level = state.level(spec).min(spec.height);
    let r_in = 0.5 * spec.diameter;
    let r_out = r_in + spec.insul_t;
    let a_floor = spec.floor_area();

    let bottom = a_floor * dt / (spec.insul_t / K_INSULATION + R_FOUNDATION) / 1000.0;

    let wet_wall = if level > 0.0 {
        let r_wall = libm::log(r_out / r_in) / (2.0 * PI * K_INSULATION * level) + 1.0 / (h_out * 2.0 * PI * r_out * level);
        dt / r_wall / 1000.0
    } else {
        0.0
    };

    // Enclosure: ceiling plus dry wall, all at one temperature.
    let a_ceiling = a_floor;
    let a_dry = PI * spec.diameter * (spec.height - level).max(0.0);
    let a_enc = a_ceiling + a_dry;
    let u_enc = 1.0 / (spec.insul_t / K_INSULATION + 1.0 / h_out);
    let gray = 1.0 / (1.0 / EPS_SALT + a_floor / a_enc * (1.0 / EPS_STEEL - 1.0));
    let rad = |t_enc: f64| -> f64 {
        let ts2 = state.temp * state.temp;
        let te2 = t_enc * t_enc;
        gray * SIGMA * a_floor * (ts2 * ts2 - te2 * te2)
    };
    let out = |t_enc: f64| -> f64 { u_enc * a_enc * (t_enc - ambient) };
    // rad decreases and out increases with the enclosure temperature.
    let (mut lo, mut hi) = if dt >= 0.0 { (ambient, state.temp) } else { (state.temp, ambient) };
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if rad(mid) > out(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_enc = 0.5 * (lo + hi);
    let top = rad(t_enc) / 1000.0;
    let top_to_ceiling = top * a_ceiling / a_enc;
    let top_to_dry_wall = top - top_to_ceiling;

    let exterior = bottom + wet_wall + top;
    TankLosses {
        bottom,
        wet_wall,
        top_to_ceiling,
        top_to_dry_wall,
        enclosure_t: t_enc,
        exterior_convection: (wet_wall + top) * conv_share,
        exterior_radiation: exterior - bottom - (wet_wall + top) * conv_share,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermal_loop::salt::T_AMBIENT;

    fn spec() -> TankSpec {
        TankSpec {
            insul_t: 0.4,
            height: 12.0,
            diameter: 20.0,
        }
    }

    #[test]
    fn empty_wall_dry() {
        let s = spec();
        let st = TankState { mass: 0.0, temp: 800.0 };
        assert_eq!(tank_losses(&s, &st, T_AMBIENT).wet_wall, 0.0);
    }

    #[test]
    fn thicker_insulation_loses_less() {
        let mut s = spec();
        let st = TankState {
            mass: 0.5 * s.capacity_mass(),
            temp: 820.0,
        };
        let mut prev = tank_losses(&s, &st, T_AMBIENT).total();
        for _ in 0..20 {
            s.insul_t += 0.05;
            let l = tank_losses(&s, &st, T_AMBIENT).total();
            assert!(l < prev);
            prev = l;
        }
    }

    #[test]
    fn conduction_linear_in_delta_t() {
        let s = spec();
        let m = 0.4 * s.capacity_mass();
        let a = tank_losses(&s, &TankState { mass: m, temp: T_AMBIENT + 250.0 }, T_AMBIENT);
        let b = tank_losses(&s, &TankState { mass: m, temp: T_AMBIENT + 500.0 }, T_AMBIENT);
        assert!((b.bottom / a.bottom - 2.0).abs() < 1e-9);
        assert!((b.wet_wall / a.wet_wall - 2.0).abs() < 1e-9);
    }
}
