//! Solar salt (60/40 NaNO3-KNO3) and shared thermal constants.

/// Specific heat (kJ/kg K).
pub const CP: f64 = 1.52;
/// Density (kg/m^3).
pub const RHO: f64 = 1800.0;
/// Melting point (K).
pub const T_MELT: f64 = 495.0;
/// Dynamic viscosity (Pa s), taken at mid operating range.
pub const MU: f64 = 0.0015;
/// Thermal conductivity (W/m K).
pub const K: f64 = 0.52;
/// Prandtl number from the values above.
pub const PR: f64 = CP * 1000.0 * MU / K;

/// Ambient air temperature (K).
pub const T_AMBIENT: f64 = 298.15;
/// Stefan-Boltzmann constant (W/m^2 K^4).
pub const SIGMA: f64 = 5.670_374_419e-8;
/// Gravity (m/s^2).
pub const G: f64 = 9.81;
/// Pump efficiency shared by every pumping term.
pub const PUMP_EFFICIENCY: f64 = 0.90;

/// Darcy friction factor for smooth tubes.
pub fn darcy_friction(re: f64) -> f64 {
    if re <= 0.0 {
        0.0
    } else if re < 2300.0 {
        64.0 / re
    } else {
        0.316 * libm::pow(re, -0.25)
    }
}

/// Tube-side Nusselt number: Dittus-Boelter, floored at the laminar value.
pub fn nusselt_tube(re: f64, pr: f64, heating: bool) -> f64 {
    let n = if heating { 0.4 } else { 0.3 };
    (0.023 * libm::pow(re, 0.8) * libm::pow(pr, n)).max(4.36)
}
