//! Cavity receiver heat balance.
//!
//! The cavity is a half cylinder of diameter `W_rcv` and height `H_rcv`
//! closed by two half discs; tubes line its curved wall. The wall
//! temperature is found by a damped fixed-point iteration, safeguarded by
//! a bisection bracket, that balances
//! reflection, re-radiation through the aperture, natural convection and
//! conduction through the insulation against the heat taken up by the salt.

use super::salt::{self, CP, SIGMA, T_AMBIENT};

const ALPHA_TUBE: f64 = 0.93;
const ALPHA_REFRACTORY: f64 = 0.20;
const EPS_TUBE: f64 = 0.87;
const EPS_REFRACTORY: f64 = 0.40;
/// Insulation conductivity (W/m K).
const K_INSULATION: f64 = 0.06;
/// Outer skin film coefficient (W/m^2 K).
const H_OUTER: f64 = 20.0;
/// Flow passes through at most this many panels in series.
pub const PANELS_IN_SERIES: u32 = 16;
/// Back-pressure at the receiver outlet (MPa).
const BACK_PRESSURE: f64 = 0.0;
/// Pressure-loss coefficient per panel header turn.
const K_TURN: f64 = 1.5;

pub const MAX_ITERATIONS: u32 = 100;
pub const TOLERANCE: f64 = 1e-6;
const DAMPING: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverSpec {
    pub aperture_h: f64,
    pub aperture_w: f64,
    pub n_tubes: u32,
    pub d_in: f64,
    pub d_out: f64,
    pub insul_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverLosses {
    pub reflection: f64,
    pub radiation: f64,
    pub convection: f64,
    pub conduction: f64,
}

impl ReceiverLosses {
    pub fn total(&self) -> f64 {
        self.reflection + self.radiation + self.convection + self.conduction
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverResult {
    pub absorbed_kw: f64,
    pub salt_flow: f64,
    pub wall_t: f64,
    pub converged: bool,
    pub iterations: u32,
}

impl ReceiverSpec {
    fn aperture_area(&self) -> f64 {
        self.aperture_h * self.aperture_w
    }

    /// Inner cavity surface (m^2).
    pub fn cavity_area(&self) -> f64 {
        let w = self.aperture_w;
        0.5 * std::f64::consts::PI * w * self.aperture_h + 0.25 * std::f64::consts::PI * w * w
    }

    /// Fraction of the curved wall covered by tubes.
    fn coverage(&self) -> f64 {
        let wall = 0.5 * std::f64::consts::PI * self.aperture_w;
        (self.n_tubes as f64 * self.d_out / wall).clamp(0.0, 1.0)
    }

    fn effective(&self, surface: f64) -> f64 {
        let ratio = self.aperture_area() / self.cavity_area();
        surface / (surface + (1.0 - surface) * ratio)
    }

    /// Apparent absorptance of the cavity.
    pub fn effective_absorptance(&self) -> f64 {
        let f = self.coverage();
        self.effective(f * ALPHA_TUBE + (1.0 - f) * ALPHA_REFRACTORY)
    }

    fn effective_emittance(&self) -> f64 {
        let f = self.coverage();
        self.effective(f * EPS_TUBE + (1.0 - f) * EPS_REFRACTORY)
    }

    /// Conduction through the insulation at wall temperature `wall_t` (kW).
    pub fn conduction_loss(&self, wall_t: f64) -> f64 {
        let r = self.insul_t / K_INSULATION + 1.0 / H_OUTER;
        self.cavity_area() * (wall_t - T_AMBIENT) / r / 1000.0
    }

    /// Loss breakdown (kW) at a wall temperature.
    pub fn losses(&self, incident_kw: f64, wall_t: f64) -> ReceiverLosses {
        let dt = (wall_t - T_AMBIENT).max(0.0);
        let t4 = wall_t * wall_t * wall_t * wall_t;
        let a4 = T_AMBIENT * T_AMBIENT * T_AMBIENT * T_AMBIENT;
        // Siebers-Kraabel style natural convection coefficient.
        let h_conv = 0.81 * libm::pow(dt, 0.426);
        ReceiverLosses {
            reflection: (1.0 - self.effective_absorptance()) * incident_kw,
            radiation: self.effective_emittance() * SIGMA * self.aperture_area() * (t4 - a4) / 1000.0,
            convection: h_conv * self.cavity_area() * dt / 1000.0,
            conduction: self.conduction_loss(wall_t),
        }
    }

    /// Tubes sharing the flow side by side in one panel.
    fn parallel_tubes(&self) -> f64 {
        (self.n_tubes as f64 / self.series_panels() as f64).max(1.0)
    }

    fn series_panels(&self) -> u32 {
        self.n_tubes.clamp(1, PANELS_IN_SERIES)
    }

    fn inner_film(&self, salt_flow: f64) -> f64 {
        let per_tube = salt_flow / self.parallel_tubes();
        let re = 4.0 * per_tube / (std::f64::consts::PI * self.d_in * salt::MU);
        salt::nusselt_tube(re, salt::PR, true) * salt::K / self.d_in
    }

    /// Heated inner tube surface (m^2); only the side facing the cavity.
    fn heated_area(&self) -> f64 {
        0.5 * self.n_tubes as f64 * std::f64::consts::PI * self.d_in * self.aperture_h
    }

    /// Frictional pressure drop across the receiver at a salt flow (MPa).
    pub fn pressure_drop(&self, salt_flow: f64) -> f64 {
        if salt_flow <= 0.0 {
            return 0.0;
        }
        let per_tube = salt_flow / self.parallel_tubes();
        let area = 0.25 * std::f64::consts::PI * self.d_in * self.d_in;
        let v = per_tube / (salt::RHO * area);
        let re = salt::RHO * v * self.d_in / salt::MU;
        let length = self.series_panels() as f64 * self.aperture_h;
        let dyn_p = 0.5 * salt::RHO * v * v;
        let dp = salt::darcy_friction(re) * length / self.d_in * dyn_p + self.series_panels() as f64 * K_TURN * dyn_p;
        dp / 1e6
    }

    /// Internal tube pressure at a salt flow (MPa).
    pub fn tube_pressure(&self, salt_flow: f64) -> f64 {
        BACK_PRESSURE + self.pressure_drop(salt_flow)
    }
}

/// Solve the receiver balance. `wall_guess` seeds the iteration.
pub fn receiver_absorb_from(
    spec: &ReceiverSpec,
    incident_kw: f64,
    salt_inlet_t: f64,
    target_outlet_t: f64,
    wall_guess: f64,
) -> ReceiverResult {
    let idle = ReceiverResult {
        absorbed_kw: 0.0,
        salt_flow: 0.0,
        wall_t: salt_inlet_t,
        converged: true,
        iterations: 0,
    };
    if incident_kw <= 0.0 || target_outlet_t <= salt_inlet_t {
        return idle;
    }
    let t_mean = 0.5 * (salt_inlet_t + target_outlet_t);
    let dt_salt = target_outlet_t - salt_inlet_t;
    let area = spec.heated_area();
    let q0 = incident_kw - spec.losses(incident_kw, t_mean).total();
    if q0 <= 0.0 {
        // Losses at the salt temperature already exceed the input.
        return ReceiverResult { iterations: 1, ..idle };
    }
    // Wall temperature the salt film implies for a given wall guess.
    let image = |wall: f64| {
        let q = (incident_kw - spec.losses(incident_kw, wall).total()).max(0.0);
        t_mean + q * 1000.0 / (spec.inner_film(q / (CP * dt_salt)) * area)
    };
    // The residual `image(w) - w` falls with `w`; keep a bracket around its
    // root and fall back to bisection whenever a damped step leaves it or
    // stalls.
    let (mut lo, mut hi) = (t_mean, f64::INFINITY);
    let mut wall = wall_guess.max(t_mean);
    let mut last = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let step = image(wall) - wall;
        if !step.is_finite() {
            break;
        }
        if step >= 0.0 {
            lo = lo.max(wall);
        } else {
            hi = hi.min(wall);
        }
        if step.abs() <= TOLERANCE * wall || hi - lo <= TOLERANCE * wall {
            let absorbed = (incident_kw - spec.losses(incident_kw, wall).total()).max(0.0);
            return ReceiverResult {
                absorbed_kw: absorbed,
                salt_flow: absorbed / (CP * dt_salt),
                wall_t: wall,
                converged: true,
                iterations: it,
            };
        }
        let next = wall + DAMPING * step;
        // Slow progress means the map is too steep here; bisect instead.
        let stalled = step.abs() > 0.5 * last && hi.is_finite();
        last = step.abs();
        wall = if next > lo && next < hi && !stalled {
            next
        } else if hi.is_finite() {
            0.5 * (lo + hi)
        } else {
            2.0 * wall - lo
        };
    }
    ReceiverResult {
        absorbed_kw: 0.0,
        salt_flow: 0.0,
        wall_t: wall,
        converged: false,
        iterations: MAX_ITERATIONS,
    }
}

/// Solve the receiver balance from a cold start.
pub fn receiver_absorb(spec: &ReceiverSpec, incident_kw: f64, salt_inlet_t: f64, target_outlet_t: f64) -> ReceiverResult {
    receiver_absorb_from(spec, incident_kw, salt_inlet_t, target_outlet_t, target_outlet_t + 50.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> ReceiverSpec {
        ReceiverSpec {
            aperture_h: 12.0,
            aperture_w: 12.0,
            n_tubes: 600,
            d_in: 0.035,
            d_out: 0.04,
            insul_t: 0.3,
        }
    }

    #[test]
    fn bypass_at_zero_flux() {
        let r = receiver_absorb(&spec(), 0.0, 560.0, 840.0);
        assert_eq!((r.absorbed_kw, r.salt_flow), (0.0, 0.0));
    }

    #[test]
    fn losses_positive() {
        for q in [1e4, 5e4, 1.2e5] {
            let r = receiver_absorb(&spec(), q, 560.0, 840.0);
            assert!(r.converged);
            assert!(r.absorbed_kw < q && r.absorbed_kw > 0.0, "{q} {r:?}");
        }
        // Re-radiation alone outweighs a weak flux on a large aperture.
        let weak = receiver_absorb(&spec(), 1e3, 560.0, 840.0);
        assert_eq!(weak.absorbed_kw, 0.0);
    }

    #[test]
    fn insulation_reduces_conduction() {
        let mut s = spec();
        let a = s.conduction_loss(800.0);
        s.insul_t += 0.01;
        assert!(s.conduction_loss(800.0) < a);
        let r1 = receiver_absorb(&spec(), 5e4, 560.0, 840.0);
        let r2 = receiver_absorb(&s, 5e4, 560.0, 840.0);
        assert!(s.conduction_loss(r2.wall_t) < spec().conduction_loss(r1.wall_t));
    }
}
