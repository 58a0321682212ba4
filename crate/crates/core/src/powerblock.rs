//! Steam turbine catalogue, part-load efficiency and dispatch.
//!
//! Efficiency at full load grows with live steam temperature and pressure:
//! `eta_max = 0.20 + 2.5e-4 (T_in - 600) + 0.005 P_in`. Part load follows
//! `eta(u) = eta_max (0.45 + 1.1 u - 0.55 u^2)` for usage ratio `u`, which
//! peaks at `u = 1`.

use std::sync::OnceLock;

/// Mechanical to electrical conversion.
pub const GENERATOR_EFFICIENCY: f64 = 0.95;
const PART_LOAD: [f64; 3] = [0.45, 1.1, -0.55];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurbineRecord {
    pub id: u32,
    pub inlet_t: f64,
    pub inlet_p: f64,
    pub p_max: f64,
    pub p_min: f64,
    pub cost: f64,
}

impl TurbineRecord {
    pub fn eta_max(&self) -> f64 {
        0.20 + 2.5e-4 * (self.inlet_t - 600.0) + 0.005 * self.inlet_p
    }
}

static CATALOGUE: OnceLock<Vec<TurbineRecord>> = OnceLock::new();

fn parse_catalogue(text: &str) -> Vec<TurbineRecord> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<f64> = l
                .split(',')
                .map(|v| v.trim().parse().expect("turbine catalogue holds numbers"))
                .collect();
            TurbineRecord {
                id: f[0] as u32,
                inlet_t: f[1],
                inlet_p: f[2],
                p_max: f[3],
                p_min: f[4],
                cost: f[5],
            }
        })
        .collect()
}

pub fn catalogue() -> &'static [TurbineRecord] {
    CATALOGUE.get_or_init(|| parse_catalogue(crate::data::TURBINES_CSV))
}

/// Catalogue row for turbine type `st` (1..=8).
pub fn turbine_lookup(st: u32) -> Option<TurbineRecord> {
    catalogue().iter().find(|t| t.id == st).copied()
}

pub fn turbine_efficiency(t: &TurbineRecord, usage_ratio: f64) -> f64 {
    let u = usage_ratio.clamp(0.0, 1.0);
    t.eta_max() * (PART_LOAD[0] + PART_LOAD[1] * u + PART_LOAD[2] * u * u)
}

/// Thermal input (kW) needed for an electric output (kW).
pub fn thermal_for(t: &TurbineRecord, electric_kw: f64) -> f64 {
    if electric_kw <= 0.0 {
        return 0.0;
    }
    electric_kw / (turbine_efficiency(t, electric_kw / t.p_max) * GENERATOR_EFFICIENCY)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispatch {
    pub electric_kw: f64,
    pub thermal_draw_kw: f64,
    pub unmet_kw: f64,
}

/// Follow the demand within the turbine range, limited by available heat.
/// Below `p_min` the turbine runs at `p_min` when the heat allows it.
pub fn dispatch(t: &TurbineRecord, demand_kw: f64, available_thermal_kw: f64) -> Dispatch {
    if demand_kw <= 0.0 {
        return Dispatch {
            electric_kw: 0.0,
            thermal_draw_kw: 0.0,
            unmet_kw: 0.0,
        };
    }
    let target = demand_kw.clamp(t.p_min, t.p_max);
    let need = thermal_for(t, target);
    let electric = if need <= available_thermal_kw {
        target
    } else if thermal_for(t, t.p_min) > available_thermal_kw {
        0.0
    } else {
        // thermal_for is increasing; bisect on the electric output.
        let (mut lo, mut hi) = (t.p_min, target);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if thermal_for(t, mid) <= available_thermal_kw {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    Dispatch {
        electric_kw: electric,
        thermal_draw_kw: thermal_for(t, electric),
        unmet_kw: (demand_kw - electric).max(0.0),
    }
}
