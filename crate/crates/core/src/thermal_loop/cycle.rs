//! Coupled molten-salt cycle, advanced with explicit time steps.
//!
//! Each step works from the state at the start of the step: the steam
//! generator draws hot salt to meet the dispatched turbine load, the
//! receiver moves cold salt to the hot tank, both tanks mix perfectly, then
//! lose heat, then get anti-freeze heating if they cooled to within a margin
//! of the melting point. Tanks keep a small heel that is never pumped out.

use super::exchanger::{exchanger_required_flow, steam_flow_for, ExchangerResult, ExchangerSpec, SteamDemand};
use super::receiver::{receiver_absorb_from, ReceiverSpec};
use super::salt::{CP, T_MELT};
use super::tank::{tank_losses, TankSpec, TankState};
use crate::powerblock::{dispatch, TurbineRecord};

/// Fraction of each tank that is never pumped out.
pub const HEEL_FRACTION: f64 = 0.03;
/// Anti-freeze heaters hold tanks this far above the melting point (K).
pub const ANTIFREEZE_MARGIN: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleConfig {
    pub receiver: ReceiverSpec,
    pub hot: TankSpec,
    pub cold: TankSpec,
    pub exchanger: ExchangerSpec,
    pub turbine: TurbineRecord,
    /// Receiver outlet set point (K).
    pub rcv_target_t: f64,
    pub ambient_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantState {
    pub hot: TankState,
    pub cold: TankState,
    /// Last receiver wall temperature, used to warm-start the next solve.
    pub wall_t: f64,
    /// Seconds since the start of the window.
    pub time_s: f64,
}

impl PlantState {
    /// Tanks half full, hot at the receiver set point, cold 10 K above the
    /// minimum cold storage temperature.
    pub fn initial(cfg: &CycleConfig, cold_min_t: f64) -> Self {
        PlantState {
            hot: TankState {
                mass: 0.5 * cfg.hot.capacity_mass(),
                temp: cfg.rcv_target_t,
            },
            cold: TankState {
                mass: 0.5 * cfg.cold.capacity_mass(),
                temp: cold_min_t + 10.0,
            },
            wall_t: cfg.rcv_target_t + 50.0,
            time_s: 0.0,
        }
    }

    /// Sensible heat held by both tanks relative to 0 K (kJ).
    pub fn stored_energy(&self) -> f64 {
        CP * (self.hot.mass * self.hot.temp + self.cold.mass * self.cold.temp)
    }

    pub fn total_mass(&self) -> f64 {
        self.hot.mass + self.cold.mass
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInputs {
    /// Power reaching the aperture (kW).
    pub field_kw: f64,
    /// Electric demand (kW).
    pub demand_kw: f64,
    /// Deviation of the receiver outlet from its set point (K).
    pub outlet_offset: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepRecord {
    pub absorbed_kw: f64,
    pub rcv_flow: f64,
    pub rcv_converged: bool,
    pub rcv_wall_t: f64,
    pub steam_kw: f64,
    pub electric_kw: f64,
    pub unmet_kw: f64,
    pub sg_flow: f64,
    pub sg_outlet_t: f64,
    pub water_flow: f64,
    pub shell_dp: f64,
    pub tube_dp: f64,
    pub effectiveness: f64,
    pub hot_loss_kw: f64,
    pub cold_loss_kw: f64,
    pub hot_heating_kw: f64,
    pub cold_heating_kw: f64,
    /// Tank temperatures after losses, before heating.
    pub hot_low_t: f64,
    pub cold_low_t: f64,
    /// |energy in - out - change in storage| / storage.
    pub energy_residual: f64,
}

fn steam_demand(turbine: &TurbineRecord, thermal_kw: f64) -> SteamDemand {
    SteamDemand {
        water_flow: steam_flow_for(thermal_kw, turbine.inlet_t, turbine.inlet_p),
        steam_t: turbine.inlet_t,
        steam_p: turbine.inlet_p,
    }
}

fn run_exchanger(sg: &ExchangerSpec, turbine: &TurbineRecord, hot_t: f64, thermal_kw: f64) -> (ExchangerResult, f64) {
    let d = steam_demand(turbine, thermal_kw);
    (exchanger_required_flow(sg, hot_t, &d), d.water_flow)
}

/// Dispatch the turbine and size the salt draw from the hot tank.
fn discharge(cfg: &CycleConfig, hot: &TankState, hot_avail: f64, dt: f64, demand: f64) -> (f64, f64, ExchangerResult, f64) {
    let t = &cfg.turbine;
    let idle = |unmet: f64| (0.0, unmet, ExchangerResult {
        salt_flow: 0.0,
        salt_outlet_t: hot.temp,
        shell_dp: 0.0,
        tube_dp: 0.0,
        effectiveness: 0.0,
        delivered_kw: 0.0,
        feasible: true,
    }, 0.0);
    if demand <= 0.0 {
        return idle(0.0);
    }
    let max_flow = hot_avail / dt;
    let ok = |q: f64| {
        let (r, _) = run_exchanger(&cfg.exchanger, t, hot.temp, q);
        r.feasible && r.salt_flow <= max_flow
    };
    let full = dispatch(t, demand, f64::INFINITY);
    let thermal = if ok(full.thermal_draw_kw) {
        full.thermal_draw_kw
    } else {
        let (mut lo, mut hi) = (0.0, full.thermal_draw_kw);
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let d = dispatch(t, demand, thermal);
    if d.thermal_draw_kw <= 0.0 {
        return idle(d.unmet_kw);
    }
    let (r, water) = run_exchanger(&cfg.exchanger, t, hot.temp, d.thermal_draw_kw);
    (d.electric_kw, d.unmet_kw, r, water)
}

/// Apply losses then heating to a tank after mixing. Returns
/// (loss kJ, heating kJ, temperature before heating).
fn cool_and_heat(spec: &TankSpec, before: &TankState, after: &mut TankState, dt: f64, ambient: f64) -> (f64, f64, f64) {
    let loss_kw = tank_losses(spec, before, ambient).total();
    let room = (after.mass * CP * (after.temp - ambient)).max(0.0);
    let loss = (loss_kw * dt).min(room);
    if after.mass > 0.0 {
        after.temp -= loss / (after.mass * CP);
    }
    let low = after.temp;
    let floor = T_MELT + ANTIFREEZE_MARGIN;
    let mut heat = 0.0;
    if after.mass > 0.0 && after.temp < floor {
        heat = after.mass * CP * (floor - after.temp);
        after.temp = floor;
    }
    (loss, heat, low)
}

/// Advance the plant by `dt` seconds.
pub fn step_cycle(cfg: &CycleConfig, state: &PlantState, dt: f64, input: &StepInputs) -> (PlantState, StepRecord) {
    let hot = state.hot;
    let cold = state.cold;
    let heel_hot = HEEL_FRACTION * cfg.hot.capacity_mass();
    let heel_cold = HEEL_FRACTION * cfg.cold.capacity_mass();
    let hot_avail = (hot.mass - heel_hot).max(0.0);
    let cold_avail = (cold.mass - heel_cold).max(0.0);

    let (electric, unmet, sg, water) = discharge(cfg, &hot, hot_avail, dt, input.demand_kw);
    let m_out = sg.salt_flow * dt;

    let rcv = receiver_absorb_from(&cfg.receiver, input.field_kw, cold.temp, cfg.rcv_target_t, state.wall_t);
    let outlet_t = cfg.rcv_target_t + input.outlet_offset;
    let mut rcv_flow = if rcv.absorbed_kw > 0.0 && outlet_t > cold.temp {
        rcv.absorbed_kw / (CP * (outlet_t - cold.temp))
    } else {
        0.0
    };
    // Defocus when the cold tank runs dry or the hot tank would overflow.
    let room_hot = (cfg.hot.capacity_mass() - hot.mass + m_out).max(0.0);
    let m_in_cap = cold_avail.min(room_hot);
    if rcv_flow * dt > m_in_cap {
        rcv_flow = m_in_cap / dt;
    }
    let m_in = rcv_flow * dt;
    let absorbed_kj = m_in * CP * (outlet_t - cold.temp);
    let steam_kj = m_out * CP * (hot.temp - sg.salt_outlet_t);

    let mut new_hot = TankState {
        mass: hot.mass + m_in - m_out,
        temp: hot.temp,
    };
    if new_hot.mass > 0.0 {
        new_hot.temp = (hot.mass * hot.temp + m_in * outlet_t - m_out * hot.temp) / new_hot.mass;
    }
    let mut new_cold = TankState {
        mass: cold.mass - m_in + m_out,
        temp: cold.temp,
    };
    if new_cold.mass > 0.0 {
        new_cold.temp = (cold.mass * cold.temp - m_in * cold.temp + m_out * sg.salt_outlet_t) / new_cold.mass;
    }
    let (loss_h, heat_h, low_h) = cool_and_heat(&cfg.hot, &hot, &mut new_hot, dt, cfg.ambient_t);
    let (loss_c, heat_c, low_c) = cool_and_heat(&cfg.cold, &cold, &mut new_cold, dt, cfg.ambient_t);

    let next = PlantState {
        hot: new_hot,
        cold: new_cold,
        wall_t: if rcv.absorbed_kw > 0.0 { rcv.wall_t } else { state.wall_t },
        time_s: state.time_s + dt,
    };
    let before = state.stored_energy();
    let expected = absorbed_kj - steam_kj - loss_h - loss_c + heat_h + heat_c;
    let residual = (next.stored_energy() - before - expected).abs() / before.max(1.0);

    let rec = StepRecord {
        absorbed_kw: absorbed_kj / dt,
        rcv_flow,
        rcv_converged: rcv.converged,
        rcv_wall_t: rcv.wall_t,
        steam_kw: steam_kj / dt,
        electric_kw: electric,
        unmet_kw: unmet,
        sg_flow: sg.salt_flow,
        sg_outlet_t: sg.salt_outlet_t,
        water_flow: if sg.salt_flow > 0.0 { water } else { 0.0 },
        shell_dp: sg.shell_dp,
        tube_dp: sg.tube_dp,
        effectiveness: sg.effectiveness,
        hot_loss_kw: loss_h / dt,
        cold_loss_kw: loss_c / dt,
        hot_heating_kw: heat_h / dt,
        cold_heating_kw: heat_c / dt,
        hot_low_t: low_h,
        cold_low_t: low_c,
        energy_residual: residual,
    };
    (next, rec)
}

/// Write one CSV trace line per step.
pub fn write_trace<W: std::io::Write>(mut out: W, rows: &[(PlantState, StepRecord)], hot: &TankSpec, cold: &TankSpec) -> std::io::Result<()> {
    writeln!(out, "t_s,hot_T,cold_T,hot_L,cold_L,absorbed_kw,steam_kw")?;
    for (s, r) in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.time_s,
            s.hot.temp,
            s.cold.temp,
            s.hot.level(hot),
            s.cold.level(cold),
            r.absorbed_kw,
            r.steam_kw
        )?;
    }
    Ok(())
}
