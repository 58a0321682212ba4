//! Investment cost, parasitic losses and tube stress checks.
//!
//! Every cost term is a material quantity times a unit price from
//! `data/prices.csv`:
//!
//! - heliostats: `N (p_mirror L W + p_unit)`
//! - tower: `p_lin H + p_quad H^2`
//! - receiver: cavity surface times an installed price plus insulation volume
//! - each tank: steel shell, insulation shell, foundation and the salt that
//!   fills half of it
//! - steam generator: tube and shell steel, or a price per kW of turbine heat
//!   input when idealized
//! - turbine: catalogue price

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::plant::PlantDesign;
use crate::powerblock::{self, TurbineRecord};
use crate::thermal_loop::{salt, TankSpec};

/// Tube steel yield strength at operating temperature (MPa).
pub const YIELD_STRENGTH: f64 = 290.0;
/// Heliostat drive and control consumption while tracking (kW).
pub const HELIOSTAT_OPERATION_KW: f64 = 0.055;

#[derive(Debug, Clone, PartialEq)]
pub struct Prices {
    pub mirror_area: f64,
    pub heliostat_unit: f64,
    pub tower_linear: f64,
    pub tower_quadratic: f64,
    pub receiver_cavity_area: f64,
    pub receiver_insulation: f64,
    pub tank_steel: f64,
    pub tank_wall_thickness: f64,
    pub tank_insulation: f64,
    pub tank_foundation: f64,
    pub salt: f64,
    pub sg_tube_steel: f64,
    pub sg_shell_steel: f64,
    pub sg_shell_thickness: f64,
    pub sg_idealized: f64,
    pub steel_density: f64,
}

impl Prices {
    pub fn parse(text: &str) -> Prices {
        let map: HashMap<&str, f64> = crate::data::csv_rows(text)
            .map(|r| (r[0], r[1].parse().expect("numeric price")))
            .collect();
        let g = |k: &str| *map.get(k).unwrap_or_else(|| panic!("price `{k}` missing"));
        Prices {
            mirror_area: g("mirror_area"),
            heliostat_unit: g("heliostat_unit"),
            tower_linear: g("tower_linear"),
            tower_quadratic: g("tower_quadratic"),
            receiver_cavity_area: g("receiver_cavity_area"),
            receiver_insulation: g("receiver_insulation"),
            tank_steel: g("tank_steel"),
            tank_wall_thickness: g("tank_wall_thickness"),
            tank_insulation: g("tank_insulation"),
            tank_foundation: g("tank_foundation"),
            salt: g("salt"),
            sg_tube_steel: g("sg_tube_steel"),
            sg_shell_steel: g("sg_shell_steel"),
            sg_shell_thickness: g("sg_shell_thickness"),
            sg_idealized: g("sg_idealized"),
            steel_density: g("steel_density"),
        }
    }
}

pub fn prices() -> &'static Prices {
    static P: OnceLock<Prices> = OnceLock::new();
    P.get_or_init(|| Prices::parse(crate::data::PRICES_CSV))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CostBreakdown {
    pub heliostats: f64,
    pub tower: f64,
    pub receiver: f64,
    pub hot_storage: f64,
    pub cold_storage: f64,
    pub steam_generator: f64,
    pub turbine: f64,
    pub total: f64,
}

impl CostBreakdown {
    fn summed(mut self) -> Self {
        self.total = self.heliostats
            + self.tower
            + self.receiver
            + self.hot_storage
            + self.cold_storage
            + self.steam_generator
            + self.turbine;
        self
    }
}

pub fn heliostat_cost(n: u64, l: f64, w: f64) -> f64 {
    let p = prices();
    n as f64 * (p.mirror_area * l * w + p.heliostat_unit)
}

pub fn tower_cost(h: f64) -> f64 {
    let p = prices();
    p.tower_linear * h + p.tower_quadratic * h * h
}

pub fn receiver_cost(h: f64, w: f64, t: f64) -> f64 {
    let p = prices();
    let cavity = 0.5 * PI * w * h + 0.25 * PI * w * w;
    p.receiver_cavity_area * cavity + p.receiver_insulation * cavity * t
}

pub fn tank_cost(spec: &TankSpec) -> f64 {
    let p = prices();
    let shell = PI * spec.diameter * spec.height + 2.0 * spec.floor_area();
    let steel = shell * p.tank_wall_thickness * p.steel_density * p.tank_steel;
    let insulation = shell * spec.insul_t * p.tank_insulation;
    let foundation = spec.floor_area() * p.tank_foundation;
    let inventory = 0.5 * spec.capacity_mass() * p.salt;
    steel + insulation + foundation + inventory
}

pub fn steam_generator_cost(design: &PlantDesign, turbine: &TurbineRecord) -> f64 {
    let p = prices();
    if design.idealized_sg {
        return p.sg_idealized * powerblock::thermal_for(turbine, turbine.p_max);
    }
    let sg = design.exchanger();
    let shells = sg.n_shell_passes as f64;
    let runs = sg.n_tubes as f64 * sg.n_tube_passes as f64;
    let tube_steel = shells * runs * 0.25 * PI * (sg.d_out * sg.d_out - sg.d_in * sg.d_in) * sg.tube_len;
    let ds = sg.shell_diameter();
    let shell_area = PI * ds * sg.tube_len + 0.5 * PI * ds * ds;
    let baffles = sg.n_baffles as f64 * 0.25 * PI * ds * ds * (1.0 - sg.baffle_cut);
    let shell_steel = shells * (shell_area + baffles) * p.sg_shell_thickness;
    p.steel_density * (tube_steel * p.sg_tube_steel + shell_steel * p.sg_shell_steel)
}

/// Which plant sections an instance builds and pays for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostScope {
    pub field: bool,
    pub receiver: bool,
    pub storage: bool,
    pub power_block: bool,
}

pub fn total_cost(design: &PlantDesign, scope: CostScope) -> CostBreakdown {
    let mut c = CostBreakdown::default();
    if scope.field {
        c.heliostats = heliostat_cost(design.n_heliostats, design.heliostat_l, design.heliostat_w);
        c.tower = tower_cost(design.tower_h);
    }
    if scope.receiver {
        c.receiver = receiver_cost(design.rcv_h, design.rcv_w, design.rcv_insul);
    }
    if scope.storage {
        c.hot_storage = tank_cost(&design.hot_tank());
        c.cold_storage = tank_cost(&design.cold_tank());
    }
    if scope.power_block {
        if let Some(t) = powerblock::turbine_lookup(design.turbine) {
            c.steam_generator = steam_generator_cost(design, &t);
            c.turbine = t.cost;
        }
    }
    c.summed()
}

/// Parasitic energies over the window (kWh).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ParasiticBreakdown {
    pub receiver_pump: f64,
    pub sg_shell: f64,
    pub sg_tubes: f64,
    pub heliostat_ops: f64,
    pub hot_antifreeze: f64,
    pub cold_antifreeze: f64,
}

impl ParasiticBreakdown {
    pub fn total(&self) -> f64 {
        self.receiver_pump + self.sg_shell + self.sg_tubes + self.heliostat_ops + self.hot_antifreeze + self.cold_antifreeze
    }
}

/// Pumping power (kW) for a mass flow (kg/s) across a pressure rise (MPa).
pub fn pump_power(flow: f64, dp_mpa: f64, density: f64) -> f64 {
    flow * dp_mpa * 1e6 / density / salt::PUMP_EFFICIENCY / 1000.0
}

/// Heliostat drive energy (kWh) for `n` heliostats over `daylight_hours`.
pub fn heliostat_operation(n: u64, daylight_hours: f64) -> f64 {
    HELIOSTAT_OPERATION_KW * n as f64 * daylight_hours
}

/// Hoop stress minus yield strength (MPa). Fails when the wall has no
/// thickness.
pub fn tube_yield_margin(d_in: f64, d_out: f64, internal_p: f64, yield_strength: f64) -> f64 {
    if d_out <= d_in {
        return crate::model::FAIL;
    }
    internal_p * d_in / (d_out - d_in) - yield_strength
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heliostat_term() {
        assert_eq!(heliostat_cost(0, 10.0, 10.0), 0.0);
        assert_eq!(heliostat_operation(1000, 12.0), 660.0);
        assert_eq!(heliostat_operation(1000, 0.0), 0.0);
    }

    #[test]
    fn receiver_cost_grows_with_insulation() {
        let a = receiver_cost(10.0, 10.0, 0.3);
        let b = receiver_cost(10.0, 10.0, 0.3 + 1e-6);
        assert!(b > a);
    }

    #[test]
    fn yield_margin() {
        assert_eq!(tube_yield_margin(0.04, 0.05, 0.0, 290.0), -290.0);
        let a = tube_yield_margin(0.04, 0.05, 3.0, 290.0) + 290.0;
        let b = tube_yield_margin(0.04, 0.05, 6.0, 290.0) + 290.0;
        assert_eq!(b, 2.0 * a);
        assert_eq!(tube_yield_margin(0.05, 0.05, 1.0, 290.0), crate::model::FAIL);
        assert!(tube_yield_margin(0.05 - 1e-9, 0.05, 1.0, 290.0) > 1e6);
    }
}
