//! Shell-and-tube steam generator.
//!
//! Salt flows on the shell side, water and steam in the tubes. The water
//! side is lumped into one equivalent heat capacity rate spanning feedwater
//! to live steam (latent heat included), so the effectiveness-NTU relations
//! for counterflow shells (one tube pass) or 1-2 shells (two or more tube
//! passes) apply, chained over the shell passes.
//!
//! Film coefficients: Dittus-Boelter in the tubes, Zukauskas crossflow on
//! the shell side with a baffle-cut correction. Shell-side pressure drop adds
//! crossflow and baffle-window terms; tube-side drop is Darcy friction with
//! return losses.

use super::salt::{self, CP, RHO};
use std::f64::consts::PI;

/// Feedwater temperature entering the steam generator (K).
pub const T_FEEDWATER: f64 = 480.0;
/// Tube wall conductivity (W/m K).
const K_TUBE_WALL: f64 = 20.0;
const WATER_K: f64 = 0.60;
const WATER_MU: f64 = 1.5e-4;
const WATER_PR: f64 = 1.1;
/// Mean water/steam density used for tube-side hydraulics (kg/m^3).
pub const WATER_RHO: f64 = 800.0;
/// Upper bound on salt flow relative to the smallest possible one.
const FLOW_SPAN: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangerSpec {
    pub tube_spacing: f64,
    pub tube_len: f64,
    pub d_in: f64,
    pub d_out: f64,
    pub baffle_cut: f64,
    pub n_baffles: u32,
    pub n_tubes: u32,
    pub n_shell_passes: u32,
    pub n_tube_passes: u32,
    pub idealized: bool,
    /// Salt outlet temperature assumed by the idealized exchanger (K).
    pub nominal_outlet_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteamDemand {
    /// Water mass flow (kg/s).
    pub water_flow: f64,
    /// Live steam temperature (K).
    pub steam_t: f64,
    /// Live steam pressure (MPa).
    pub steam_p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangerResult {
    pub salt_flow: f64,
    pub salt_outlet_t: f64,
    /// MPa.
    pub shell_dp: f64,
    /// MPa.
    pub tube_dp: f64,
    pub effectiveness: f64,
    /// Heat actually transferred (kW).
    pub delivered_kw: f64,
    /// False when the demand cannot be met at any salt flow.
    pub feasible: bool,
}

impl ExchangerResult {
    fn idle(hot_t: f64) -> Self {
        ExchangerResult {
            salt_flow: 0.0,
            salt_outlet_t: hot_t,
            shell_dp: 0.0,
            tube_dp: 0.0,
            effectiveness: 0.0,
            delivered_kw: 0.0,
            feasible: true,
        }
    }
}

/// Saturation temperature of water (K) at pressure `p` (MPa),
/// Clausius-Clapeyron anchored at the normal boiling point.
pub fn saturation_t(p: f64) -> f64 {
    1.0 / (1.0 / 373.15 - libm::log(p / 0.101_325) / 4892.0)
}

/// Enthalpy rise from feedwater to live steam (kJ/kg).
pub fn steam_enthalpy_rise(steam_t: f64, steam_p: f64) -> f64 {
    let t_sat = saturation_t(steam_p);
    let h_liquid = 4.3 * (T_FEEDWATER - 273.15);
    let h_sat_vapor = 2790.0;
    h_sat_vapor + 2.2 * (steam_t - t_sat).max(0.0) - h_liquid
}

/// Water flow (kg/s) carrying `thermal_kw` from feedwater to steam.
pub fn steam_flow_for(thermal_kw: f64, steam_t: f64, steam_p: f64) -> f64 {
    thermal_kw / steam_enthalpy_rise(steam_t, steam_p)
}

fn counterflow(ntu: f64, cr: f64) -> f64 {
    if (1.0 - cr).abs() < 1e-9 {
        ntu / (1.0 + ntu)
    } else {
        let e = libm::exp(-ntu * (1.0 - cr));
        (1.0 - e) / (1.0 - cr * e)
    }
}

fn one_shell_two_pass(ntu: f64, cr: f64) -> f64 {
    let s = (1.0 + cr * cr).sqrt();
    let e = libm::exp(-ntu * s);
    2.0 / (1.0 + cr + s * (1.0 + e) / (1.0 - e))
}

/// Effectiveness of `shells` identical shells in series.
pub fn effectiveness(ntu: f64, cr: f64, shells: u32, tube_passes: u32) -> f64 {
    if ntu <= 0.0 {
        return 0.0;
    }
    let n = shells.max(1);
    let ntu1 = ntu / n as f64;
    let e1 = if tube_passes <= 1 { counterflow(ntu1, cr) } else { one_shell_two_pass(ntu1, cr) };
    if n == 1 {
        return e1;
    }
    if (1.0 - cr).abs() < 1e-9 {
        let k = n as f64 * e1;
        return k / (1.0 + k - e1);
    }
    let z = libm::pow((1.0 - e1 * cr) / (1.0 - e1), n as f64);
    (z - 1.0) / (z - cr)
}

impl ExchangerSpec {
    fn tube_runs(&self) -> f64 {
        self.n_tubes as f64 * self.n_tube_passes as f64
    }

    /// Shell inside diameter from the bundle size (m).
    pub fn shell_diameter(&self) -> f64 {
        1.1 * self.tube_spacing * self.tube_runs().sqrt() + self.d_out
    }

    fn baffle_spacing(&self) -> f64 {
        self.tube_len / (self.n_baffles as f64 + 1.0)
    }

    fn crossflow_area(&self) -> f64 {
        self.baffle_spacing() * self.shell_diameter() * (self.tube_spacing - self.d_out).max(0.0) / self.tube_spacing
    }

    fn window_area(&self) -> f64 {
        let ds = self.shell_diameter();
        let free = 1.0 - PI * self.d_out * self.d_out / (4.0 * self.tube_spacing * self.tube_spacing);
        0.25 * PI * ds * ds * (1.2 * self.baffle_cut) * free.max(0.0)
    }

    /// Outer heat-transfer area over all shells (m^2).
    pub fn outer_area(&self) -> f64 {
        self.n_shell_passes as f64 * self.tube_runs() * PI * self.d_out * self.tube_len
    }

    fn inner_area(&self) -> f64 {
        self.n_shell_passes as f64 * self.tube_runs() * PI * self.d_in * self.tube_len
    }

    fn water_velocity(&self, water_flow: f64) -> f64 {
        let per_tube = water_flow / self.n_tubes as f64;
        per_tube / (WATER_RHO * 0.25 * PI * self.d_in * self.d_in)
    }

    /// Overall conductance (kW/K).
    pub fn ua(&self, salt_flow: f64, water_flow: f64) -> f64 {
        let v_w = self.water_velocity(water_flow);
        let re_w = WATER_RHO * v_w * self.d_in / WATER_MU;
        let h_i = salt::nusselt_tube(re_w, WATER_PR, true) * WATER_K / self.d_in;
        let a_x = self.crossflow_area();
        let v_s = if a_x > 0.0 { salt_flow / (RHO * a_x) } else { 0.0 };
        let re_s = RHO * v_s * self.d_out / salt::MU;
        let jc = 0.55 + 0.72 * (1.0 - 2.0 * self.baffle_cut);
        let nu_o = (0.27 * libm::pow(re_s, 0.63) * libm::pow(salt::PR, 0.36)).max(1.0) * jc;
        let h_o = nu_o * salt::K / self.d_out;
        let len = self.n_shell_passes as f64 * self.tube_runs() * self.tube_len;
        let r_wall = libm::log(self.d_out / self.d_in) / (2.0 * PI * K_TUBE_WALL * len);
        let r = 1.0 / (h_i * self.inner_area()) + r_wall + 1.0 / (h_o * self.outer_area());
        1.0 / r / 1000.0
    }

    /// Shell-side pressure drop (MPa).
    pub fn shell_dp(&self, salt_flow: f64) -> f64 {
        if salt_flow <= 0.0 {
            return 0.0;
        }
        let ds = self.shell_diameter();
        let v_c = salt_flow / (RHO * self.crossflow_area());
        let re = RHO * v_c * self.d_out / salt::MU;
        let xi = 0.75 * libm::pow(re.max(1.0), -0.2);
        let rows_cross = (ds * (1.0 - 2.0 * self.baffle_cut) / self.tube_spacing).max(1.0);
        let rows_window = ds * self.baffle_cut / self.tube_spacing;
        let dp_cross = rows_cross * xi * 0.5 * RHO * v_c * v_c;
        let v_w = salt_flow / (RHO * self.window_area());
        let dp_window = (2.0 + 0.6 * rows_window) * 0.5 * RHO * v_w * v_w;
        let nb = self.n_baffles as f64;
        let per_shell = (nb - 1.0).max(0.0) * dp_cross + nb * dp_window + 2.0 * dp_cross * (1.0 + rows_window / rows_cross);
        self.n_shell_passes as f64 * per_shell / 1e6
    }

    /// Tube-side pressure drop (MPa).
    pub fn tube_dp(&self, water_flow: f64) -> f64 {
        if water_flow <= 0.0 {
            return 0.0;
        }
        let v = self.water_velocity(water_flow);
        let re = WATER_RHO * v * self.d_in / WATER_MU;
        let passes = (self.n_shell_passes * self.n_tube_passes) as f64;
        let dyn_p = 0.5 * WATER_RHO * v * v;
        (salt::darcy_friction(re) * passes * self.tube_len / self.d_in * dyn_p + 4.0 * passes * dyn_p) / 1e6
    }

    /// Heat transferred (kW) and effectiveness at a given salt flow.
    fn transfer(&self, salt_flow: f64, hot_t: f64, demand: &SteamDemand, c_water: f64) -> (f64, f64) {
        let c_salt = salt_flow * CP;
        let (c_min, c_max) = if c_salt < c_water { (c_salt, c_water) } else { (c_water, c_salt) };
        let ntu = self.ua(salt_flow, demand.water_flow) / c_min;
        // Finite area never reaches unit effectiveness, even where exp underflows.
        let eps = effectiveness(ntu, c_min / c_max, self.n_shell_passes, self.n_tube_passes).min(1.0 - 1e-12);
        (eps * c_min * (hot_t - T_FEEDWATER), eps)
    }
}

/// Salt flow delivering the steam demand. Infeasible demands return the
/// largest transferable heat with `feasible = false`.
pub fn exchanger_required_flow(spec: &ExchangerSpec, hot_t: f64, demand: &SteamDemand) -> ExchangerResult {
    if demand.water_flow <= 0.0 {
        return ExchangerResult::idle(hot_t);
    }
    let q = demand.water_flow * steam_enthalpy_rise(demand.steam_t, demand.steam_p);
    if spec.idealized {
        let dt = hot_t - spec.nominal_outlet_t;
        if dt <= 0.0 {
            return ExchangerResult {
                feasible: false,
                ..ExchangerResult::idle(hot_t)
            };
        }
        let flow = q / (CP * dt);
        return ExchangerResult {
            salt_flow: flow,
            salt_outlet_t: spec.nominal_outlet_t,
            shell_dp: 0.0,
            tube_dp: 0.0,
            effectiveness: 1.0,
            delivered_kw: q,
            feasible: true,
        };
    }
    let c_water = q / (demand.steam_t - T_FEEDWATER).max(1.0);
    let span = hot_t - T_FEEDWATER;
    if span <= 0.0 || hot_t <= demand.steam_t {
        return ExchangerResult {
            feasible: false,
            ..ExchangerResult::idle(hot_t)
        };
    }
    let f = |m: f64| spec.transfer(m, hot_t, demand, c_water).0 - q;
    let lo0 = q / (CP * span);
    let hi_cap = lo0 * FLOW_SPAN;
    let finish = |m: f64, feasible: bool| {
        let (delivered, eps) = spec.transfer(m, hot_t, demand, c_water);
        let delivered = if feasible { q } else { delivered.max(0.0) };
        ExchangerResult {
            salt_flow: m,
            salt_outlet_t: hot_t - delivered / (m * CP),
            shell_dp: spec.shell_dp(m),
            tube_dp: spec.tube_dp(demand.water_flow),
            effectiveness: eps,
            delivered_kw: delivered,
            feasible,
        }
    };
    // Bracket the root by doubling the flow.
    let mut lo = lo0;
    let mut hi = 2.0 * lo0;
    let mut f_hi = f(hi);
    while f_hi < 0.0 {
        if hi >= hi_cap {
            return finish(hi_cap, false);
        }
        lo = hi;
        hi = (2.0 * hi).min(hi_cap);
        f_hi = f(hi);
    }
    let mut f_lo = f(lo);
    // Illinois false position.
    let mut side = 0i8;
    let mut m = hi;
    for _ in 0..100 {
        m = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        let fm = f(m);
        if fm.abs() <= 1e-10 * q || (hi - lo) <= 1e-12 * hi {
            break;
        }
        if fm > 0.0 {
            hi = m;
            f_hi = fm;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        } else {
            lo = m;
            f_lo = fm;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        }
    }
    finish(m, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn spec() -> ExchangerSpec {
        ExchangerSpec {
            tube_spacing: 0.03,
            tube_len: 6.0,
            d_in: 0.016,
            d_out: 0.02,
            baffle_cut: 0.25,
            n_baffles: 8,
            n_tubes: 500,
            n_shell_passes: 2,
            n_tube_passes: 2,
            idealized: false,
            nominal_outlet_t: 560.0,
        }
    }

    fn demand(q: f64) -> SteamDemand {
        SteamDemand {
            water_flow: steam_flow_for(q, 773.0, 8.0),
            steam_t: 773.0,
            steam_p: 8.0,
        }
    }

    #[test]
    fn idealized_matches_enthalpy_balance() {
        let mut s = spec();
        s.idealized = true;
        let r = exchanger_required_flow(&s, 840.0, &demand(30_000.0));
        assert_eq!(r.shell_dp, 0.0);
        assert_eq!(r.tube_dp, 0.0);
        assert_eq!(r.effectiveness, 1.0);
        assert!((r.salt_flow - 30_000.0 / (CP * (840.0 - 560.0))).abs() < 1e-9);
    }

    #[test]
    fn hotter_salt_needs_less_flow() {
        let s = spec();
        let mut prev = f64::INFINITY;
        for t in [800.0, 820.0, 840.0, 860.0, 900.0] {
            let r = exchanger_required_flow(&s, t, &demand(30_000.0));
            assert!(r.feasible);
            assert!(r.effectiveness > 0.0 && r.effectiveness < 1.0);
            assert!((r.delivered_kw - 30_000.0).abs() < 1e-3);
            assert!(r.salt_flow < prev);
            prev = r.salt_flow;
        }
    }

    #[test]
    fn zero_demand_idle() {
        let r = exchanger_required_flow(&spec(), 840.0, &demand(0.0));
        assert_eq!((r.salt_flow, r.shell_dp, r.tube_dp), (0.0, 0.0, 0.0));
    }

    #[test]
    fn effectiveness_bounds() {
        for &cr in &[0.0, 0.3, 1.0] {
            for &ntu in &[0.1, 1.0, 5.0, 30.0] {
                for shells in 1..4 {
                    for tp in 1..3 {
                        let e = effectiveness(ntu, cr, shells, tp);
                        assert!(e > 0.0 && e <= 1.0, "{ntu} {cr} {shells} {tp} {e}");
                    }
                }
            }
        }
    }
}
