//! Time-domain runs shared by the instances: field optics over a window,
//! the receiver on its own, and the full storage plant.
//!
//! Field power is traced once per evaluation at every whole hour of the
//! window and interpolated linearly in between. Stochastic replications only
//! perturb what happens downstream of the optics, so they reuse the trace.

use crate::detrng::RngState;
use crate::economics::{self, ParasiticBreakdown};
use crate::heliofield::{
    generate_grid_nearest, rate_positions, select_heliostats, sun_position, GridError, OpticalParams, SunState,
    Tracer, RAYS_FULL,
};
use crate::plant::PlantDesign;
use crate::thermal_loop::{
    receiver_absorb_from, salt, step_cycle, CycleConfig, PlantState, ReceiverSpec, StepInputs, StepRecord,
    WATER_RHO,
};
use crate::vec3::Vec3;

/// Site latitude (deg).
pub const LATITUDE: f64 = 37.56;
/// Windows open at 06:00 solar time.
pub const WINDOW_START_MINUTE: f64 = 360.0;
/// Rating considers the nearest `3 N + 1000` grid positions.
const RATING_POOL_FACTOR: u64 = 3;
const RATING_POOL_EXTRA: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub day: u32,
    pub hours: u32,
}

impl Window {
    /// One-minute steps over the whole window.
    pub fn full_steps(&self) -> usize {
        self.hours as usize * 60
    }

    /// Sun `hour` hours after the window opens.
    pub fn sun(&self, hour: f64) -> SunState {
        let minute = WINDOW_START_MINUTE + hour * 60.0;
        let days = libm::floor(minute / 1440.0);
        let mut s = sun_position(LATITUDE, self.day + days as u32, minute - days * 1440.0);
        s.time = hour * 60.0;
        s
    }
}

/// Simulator resolution for a fidelity level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolution {
    pub steps: usize,
    pub rays: u32,
}

pub fn resolution(window: &Window, fidelity: f64) -> Resolution {
    let steps = libm::round(fidelity * window.full_steps() as f64) as usize;
    let rays = libm::round(fidelity * RAYS_FULL as f64) as u32;
    Resolution {
        steps: steps.max(24),
        rays: rays.max(1),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldRun {
    pub capacity: usize,
    pub fit_slack: f64,
    pub heliostats: usize,
    /// Power on the aperture at each whole hour of the window (kW).
    pub hourly_kw: Vec<f64>,
}

/// Lay out, rate, select and trace the field of a design.
pub fn trace_field(design: &PlantDesign, window: &Window, rays: u32) -> Result<FieldRun, GridError> {
    let params = design.field();
    let n = design.n_heliostats;
    let pool = n.saturating_mul(RATING_POOL_FACTOR).saturating_add(RATING_POOL_EXTRA);
    let layout = generate_grid_nearest(&params, pool.min(usize::MAX as u64) as usize)?;
    let aperture = design.aperture();
    let optics = OpticalParams::default();
    // Rating uses the first day only.
    let rating_suns: Vec<Vec3> = (0..=window.hours.min(24)).map(|h| window.sun(h as f64).direction).collect();
    let rated = rate_positions(&layout, &aperture, &rating_suns, &optics);
    let sel = select_heliostats(&params, rated, n, layout.capacity());
    let tracer = Tracer::new(&sel);
    let hourly_kw = (0..=window.hours)
        .map(|h| tracer.power(&aperture, window.sun(h as f64).direction, rays, &optics))
        .collect();
    Ok(FieldRun {
        capacity: layout.capacity(),
        fit_slack: sel.fit_slack,
        heliostats: sel.heliostats.len(),
        hourly_kw,
    })
}

/// Linear interpolation in an hourly series; clamps past the ends.
pub fn interpolate(hourly: &[f64], hour: f64) -> f64 {
    if hourly.is_empty() {
        return 0.0;
    }
    let last = hourly.len() - 1;
    if hour <= 0.0 {
        return hourly[0];
    }
    let i = libm::floor(hour) as usize;
    if i >= last {
        return hourly[last];
    }
    let f = hour - i as f64;
    hourly[i] + f * (hourly[i + 1] - hourly[i])
}

/// Value of a piecewise-constant hourly series.
pub fn hourly_step(hourly: &[f64], hour: f64) -> f64 {
    if hourly.is_empty() {
        return 0.0;
    }
    let i = (libm::floor(hour.max(0.0)) as usize).min(hourly.len() - 1);
    hourly[i]
}

/// Magnitudes of the stochastic channels. All zero means a quiet run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseModel {
    /// Lognormal sigma of a per-run irradiance level.
    pub weather_sigma: f64,
    /// Stationary sigma and lag-one correlation of the per-step AR(1)
    /// irradiance perturbation.
    pub irradiance_sigma: f64,
    pub irradiance_rho: f64,
    /// Relative sigma of a per-run demand factor.
    pub demand_sigma: f64,
    /// Per-run and per-step receiver outlet deviations (K).
    pub outlet_bias_sigma: f64,
    pub outlet_sigma: f64,
}

impl NoiseModel {
    pub const NONE: NoiseModel = NoiseModel {
        weather_sigma: 0.0,
        irradiance_sigma: 0.0,
        irradiance_rho: 0.0,
        demand_sigma: 0.0,
        outlet_bias_sigma: 0.0,
        outlet_sigma: 0.0,
    };
}

/// Noise drawn for one replication. Every step consumes exactly two
/// Gaussian draws so streams stay aligned regardless of plant behaviour.
#[derive(Debug, Clone)]
pub struct NoiseStream {
    model: NoiseModel,
    rng: Option<RngState>,
    weather: f64,
    demand: f64,
    bias: f64,
    ar: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepNoise {
    pub irradiance: f64,
    pub outlet: f64,
}

impl NoiseStream {
    pub fn quiet() -> Self {
        NoiseStream {
            model: NoiseModel::NONE,
            rng: None,
            weather: 1.0,
            demand: 1.0,
            bias: 0.0,
            ar: 0.0,
        }
    }

    pub fn new(model: NoiseModel, mut rng: RngState) -> Self {
        let g_w = rng.next_gaussian();
        let g_d = rng.next_gaussian();
        let g_b = rng.next_gaussian();
        let g_a = rng.next_gaussian();
        let sw = model.weather_sigma;
        NoiseStream {
            model,
            weather: libm::exp(sw * g_w - 0.5 * sw * sw),
            demand: (1.0 + model.demand_sigma * g_d).max(0.0),
            bias: model.outlet_bias_sigma * g_b,
            ar: model.irradiance_sigma * g_a,
            rng: Some(rng),
        }
    }

    pub fn demand_factor(&self) -> f64 {
        self.demand
    }

    pub fn next_step(&mut self) -> StepNoise {
        let Some(rng) = self.rng.as_mut() else {
            return StepNoise {
                irradiance: 1.0,
                outlet: 0.0,
            };
        };
        let g1 = rng.next_gaussian();
        let g2 = rng.next_gaussian();
        let m = &self.model;
        let rho = m.irradiance_rho;
        self.ar = rho * self.ar + (1.0 - rho * rho).sqrt() * m.irradiance_sigma * g1;
        let s = m.irradiance_sigma;
        StepNoise {
            irradiance: self.weather * libm::exp(self.ar - 0.5 * s * s),
            outlet: self.bias + m.outlet_sigma * g2,
        }
    }
}

/// Energy reaching the aperture over the window (kWh).
pub fn incident_energy(hourly_kw: &[f64], window: &Window, steps: usize, noise: &mut NoiseStream) -> f64 {
    let dt_h = window.hours as f64 / steps as f64;
    let mut e = 0.0;
    for k in 0..steps {
        let n = noise.next_step();
        e += interpolate(hourly_kw, k as f64 * dt_h) * n.irradiance * dt_h;
    }
    e
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReceiverRun {
    pub incident_kwh: f64,
    pub absorbed_kwh: f64,
    pub max_flow: f64,
    pub pump_kwh: f64,
    pub daylight_hours: f64,
    pub converged: bool,
}

/// Receiver fed at a fixed inlet temperature, no storage behind it.
pub fn run_receiver(
    spec: &ReceiverSpec,
    tower_h: f64,
    hourly_kw: &[f64],
    window: &Window,
    steps: usize,
    inlet_t: f64,
    outlet_t: f64,
    noise: &mut NoiseStream,
) -> ReceiverRun {
    let dt_h = window.hours as f64 / steps as f64;
    let mut run = ReceiverRun {
        converged: true,
        ..Default::default()
    };
    let mut wall = outlet_t + 50.0;
    for k in 0..steps {
        let hour = k as f64 * dt_h;
        let n = noise.next_step();
        let q = interpolate(hourly_kw, hour) * n.irradiance;
        if window.sun(hour).above_horizon {
            run.daylight_hours += dt_h;
        }
        let target = outlet_t + n.outlet;
        let r = receiver_absorb_from(spec, q, inlet_t, target, wall);
        if !r.converged {
            run.converged = false;
        }
        if r.absorbed_kw > 0.0 {
            wall = r.wall_t;
        }
        run.incident_kwh += q * dt_h;
        run.absorbed_kwh += r.absorbed_kw * dt_h;
        run.max_flow = run.max_flow.max(r.salt_flow);
        run.pump_kwh += receiver_pump_kw(spec, tower_h, r.salt_flow) * dt_h;
    }
    run
}

/// Lift to the tower top plus tube friction.
pub fn receiver_pump_kw(spec: &ReceiverSpec, tower_h: f64, flow: f64) -> f64 {
    if flow <= 0.0 {
        return 0.0;
    }
    let lift = salt::RHO * salt::G * tower_h / 1e6;
    economics::pump_power(flow, lift + spec.pressure_drop(flow), salt::RHO)
}

/// Everything a full plant run needs besides noise.
#[derive(Debug, Clone)]
pub struct PlantRunConfig<'a> {
    pub cycle: CycleConfig,
    pub cold_min_t: f64,
    pub tower_h: f64,
    pub heliostats: usize,
    pub field_kw: &'a [f64],
    pub demand_kw: &'a [f64],
    pub window: Window,
    pub steps: usize,
    /// Electric output counted as running at nominal capacity (kW).
    pub nominal_kw: Option<f64>,
    pub keep_trace: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlantRun {
    pub incident_kwh: f64,
    pub absorbed_kwh: f64,
    pub electric_kwh: f64,
    pub demand_kwh: f64,
    pub unmet_kwh: f64,
    pub nominal_hours: f64,
    pub daylight_hours: f64,
    pub max_rcv_flow: f64,
    pub min_hot_t: f64,
    pub min_cold_t: f64,
    /// Lowest salt temperature leaving the steam generator; the hot tank
    /// start temperature if it never ran.
    pub min_sg_outlet_t: f64,
    pub parasitics: ParasiticBreakdown,
    /// Hot tank energy above the melting point at start and end (kWh).
    pub initial_hot_kwh: f64,
    pub final_hot_kwh: f64,
    pub max_residual: f64,
    pub mass_drift: f64,
    pub converged: bool,
    pub trace: Vec<(PlantState, StepRecord)>,
}

fn hot_energy_kwh(s: &PlantState) -> f64 {
    s.hot.mass * salt::CP * (s.hot.temp - salt::T_MELT) / 3600.0
}

pub fn run_plant(cfg: &PlantRunConfig<'_>, noise: &mut NoiseStream) -> PlantRun {
    let w = &cfg.window;
    let dt_h = w.hours as f64 / cfg.steps as f64;
    let dt = dt_h * 3600.0;
    let mut state = PlantState::initial(&cfg.cycle, cfg.cold_min_t);
    let m0 = state.total_mass();
    let mut run = PlantRun {
        min_hot_t: f64::INFINITY,
        min_cold_t: f64::INFINITY,
        min_sg_outlet_t: f64::INFINITY,
        initial_hot_kwh: hot_energy_kwh(&state),
        converged: true,
        ..Default::default()
    };
    let demand_factor = noise.demand_factor();
    let sg = &cfg.cycle.exchanger;
    for k in 0..cfg.steps {
        let hour = k as f64 * dt_h;
        let n = noise.next_step();
        let field = interpolate(cfg.field_kw, hour) * n.irradiance;
        let demand = hourly_step(cfg.demand_kw, hour) * demand_factor;
        let input = StepInputs {
            field_kw: field,
            demand_kw: demand,
            outlet_offset: n.outlet,
        };
        let (next, rec) = step_cycle(&cfg.cycle, &state, dt, &input);
        if !rec.rcv_converged {
            run.converged = false;
        }
        if w.sun(hour).above_horizon {
            run.daylight_hours += dt_h;
        }
        run.incident_kwh += field * dt_h;
        run.absorbed_kwh += rec.absorbed_kw * dt_h;
        run.electric_kwh += rec.electric_kw * dt_h;
        run.demand_kwh += demand * dt_h;
        run.unmet_kwh += rec.unmet_kw * dt_h;
        if let Some(nom) = cfg.nominal_kw {
            if rec.electric_kw >= nom * (1.0 - 1e-9) {
                run.nominal_hours += dt_h;
            }
        }
        run.max_rcv_flow = run.max_rcv_flow.max(rec.rcv_flow);
        run.min_hot_t = run.min_hot_t.min(rec.hot_low_t);
        run.min_cold_t = run.min_cold_t.min(rec.cold_low_t);
        if rec.sg_flow > 0.0 {
            run.min_sg_outlet_t = run.min_sg_outlet_t.min(rec.sg_outlet_t);
        }
        let p = &mut run.parasitics;
        p.receiver_pump += receiver_pump_kw(&cfg.cycle.receiver, cfg.tower_h, rec.rcv_flow) * dt_h;
        if !sg.idealized {
            p.sg_shell += economics::pump_power(rec.sg_flow, rec.shell_dp, salt::RHO) * dt_h;
            p.sg_tubes += economics::pump_power(rec.water_flow, rec.tube_dp, WATER_RHO) * dt_h;
        }
        p.hot_antifreeze += rec.hot_heating_kw * dt_h;
        p.cold_antifreeze += rec.cold_heating_kw * dt_h;
        run.max_residual = run.max_residual.max(rec.energy_residual);
        if cfg.keep_trace {
            run.trace.push((next, rec));
        }
        state = next;
    }
    run.parasitics.heliostat_ops = economics::heliostat_operation(cfg.heliostats as u64, run.daylight_hours);
    if !run.min_sg_outlet_t.is_finite() {
        run.min_sg_outlet_t = cfg.cycle.rcv_target_t;
    }
    run.final_hot_kwh = hot_energy_kwh(&state);
    run.mass_drift = ((state.total_mass() - m0) / m0).abs();
    run
}
