//! The ten SOLAR instances: variables, outputs, fixed plant data and the
//! wiring from simulation results to output indices.

mod apriori;
mod simulate;
pub mod variables;

use std::sync::OnceLock;

use crate::model::{DesignPoint, VarKind, VariableSpec};
use crate::plant::PlantDesign;
use crate::simulation::{NoiseModel, Window};

pub use apriori::{apriori_eval, field_area_m2, AprioriEval};
pub use simulate::{penalty, prepare, Prepared, ReplicationOutputs};
pub use variables::Var;

/// Whether an output can be computed without the simulator, is a simulated
/// design-level quantity, or depends on the random channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputClass {
    Apriori,
    Deterministic,
    Stochastic,
}

/// Closed-form constraints, written as `lhs - rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Apriori {
    /// `2 x1 - x3`
    Tower,
    /// `x8 - x9`
    Order,
    /// `x_i - x_j`
    Less(usize, usize),
    /// Field surface in hectares minus the limit.
    Area(f64),
    /// `x_i x_j - a pi/2` with `a` a variable or a constant width.
    TubesFit(usize, usize, Width),
    /// Field surface in m^2 (the SOLAR2 objective).
    AreaObjective,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Width {
    Var(usize),
    Fixed(f64),
}

/// Simulated quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sim {
    /// Minus the energy reaching the aperture (kWh).
    NegIncident,
    /// Investment cost of the instance's cost scope ($).
    Cost,
    /// Cost of the two tanks ($).
    StorageCost,
    /// Minus the percentage of window hours at nominal output.
    NegNominalShare,
    /// Minus absorbed over incident energy.
    NegReceiverEfficiency,
    /// Minus energy absorbed by the salt (kWh).
    NegAbsorbed,
    /// Minus electric energy (kWh).
    NegElectric,
    /// Parasitic energy (kWh).
    Parasitics,
    /// Cost minus a budget ($).
    Budget(f64),
    /// Unmet demand minus 1% of the demand (kWh).
    Compliance,
    /// Required energy minus produced energy (kWh).
    MinEnergy(f64),
    /// Parasitics minus a share of the reference energy (kWh).
    ParasiticRatio(f64),
    /// Hot tank energy at start minus at end (kWh).
    StorageBack,
    HotMelt,
    ColdMelt,
    SgOutletMelt,
    /// Turbine inlet temperature plus margin minus receiver outlet (K).
    OutletTemp,
    /// Receiver tube hoop stress minus yield (MPa).
    RcvPressure,
    /// Steam generator tube hoop stress minus yield (MPa).
    SgPressure,
    /// Heliostats requested minus grid capacity.
    Fit,
    /// Design-point receiver wall temperature minus a limit (K).
    WallTemp(f64),
    /// SOLAR6 cost plus squared violations, scaled.
    Penalty,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expr {
    Apriori(Apriori),
    Sim(Sim),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutputDef {
    pub class: OutputClass,
    pub expr: Expr,
    pub description: &'static str,
}

/// Which sections the instance simulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Optics only.
    Field,
    /// Optics and receiver at a fixed inlet temperature.
    Receiver,
    /// Optics, receiver, storage and power block.
    Plant,
    /// Storage and power block fed by a shipped hourly field table.
    TablePlant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceSpec {
    pub id: u32,
    pub name: &'static str,
    pub title: &'static str,
    pub variables: Vec<VariableSpec>,
    pub layout: Vec<Var>,
    pub p: usize,
    pub outputs: Vec<OutputDef>,
    pub multifidelity: bool,
    pub x0: DesignPoint,
    pub window: Window,
    pub scope: Scope,
    pub noise: NoiseModel,
    /// Fixed plant parameters; variables overwrite their entries.
    pub base: PlantDesign,
    /// Hourly electric demand (kW), empty when the instance has none.
    pub demand_kw: Vec<f64>,
    /// Hourly field power on the aperture (kW) for table-driven instances.
    pub field_table_kw: Vec<f64>,
}

impl InstanceSpec {
    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn m(&self) -> usize {
        self.outputs.len() - self.p
    }

    pub fn count_kind(&self, kind: VarKind) -> usize {
        self.variables.iter().filter(|v| v.kind == kind).count()
    }

    pub fn count_class(&self, class: OutputClass) -> usize {
        self.outputs.iter().filter(|o| o.class == class).count()
    }

    /// Constraints needing the simulator.
    pub fn simulation_constraints(&self) -> usize {
        self.outputs[self.p..].iter().filter(|o| o.class != OutputClass::Apriori).count()
    }

    pub fn apriori_constraints(&self) -> usize {
        self.outputs[self.p..].iter().filter(|o| o.class == OutputClass::Apriori).count()
    }

    pub fn linear_apriori_constraints(&self) -> usize {
        self.outputs[self.p..]
            .iter()
            .filter(|o| matches!(o.expr, Expr::Apriori(Apriori::Tower | Apriori::Order | Apriori::Less(..))))
            .count()
    }

    /// `f1`, `c3`, ... for output position `k` (0-based).
    pub fn label(&self, k: usize) -> String {
        if k < self.p {
            format!("f{}", k + 1)
        } else {
            format!("c{}", k + 1 - self.p)
        }
    }

    /// Plant design for a point, fixed parameters filled in.
    pub fn design(&self, x: &DesignPoint) -> PlantDesign {
        let mut d = self.base;
        for (v, &val) in self.layout.iter().zip(&x.coords) {
            v.apply(&mut d, val);
        }
        d
    }
}

/// Baseline plant used for every parameter an instance does not expose.
pub const BASE_DESIGN: PlantDesign = PlantDesign {
    heliostat_l: 9.0,
    heliostat_w: 9.0,
    tower_h: 120.0,
    rcv_h: 12.0,
    rcv_w: 12.0,
    n_heliostats: 2000,
    field_angle: 65.0,
    r_min: 1.0,
    r_max: 6.0,
    rcv_outlet_t: 900.0,
    hot_h: 12.0,
    hot_d: 20.0,
    hot_insul: 0.4,
    cold_insul: 0.4,
    cold_min_t: 530.0,
    rcv_tubes: 600,
    rcv_insul: 0.3,
    rcv_d_in: 0.035,
    rcv_d_out: 0.04,
    sg_spacing: 0.03,
    sg_len: 6.0,
    sg_d_in: 0.016,
    sg_d_out: 0.02,
    sg_baffle_cut: 0.25,
    sg_baffles: 8,
    sg_tubes: 500,
    sg_shell_passes: 2,
    sg_tube_passes: 2,
    turbine: 3,
    idealized_sg: false,
};

/// Fixed field and receiver behind the SOLAR5 field table.
pub const SOLAR5_FIELD: PlantDesign = PlantDesign {
    heliostat_l: 8.0,
    heliostat_w: 8.0,
    tower_h: 140.0,
    rcv_h: 8.0,
    rcv_w: 6.0,
    n_heliostats: 2400,
    field_angle: 75.0,
    r_min: 0.6,
    r_max: 5.0,
    ..BASE_DESIGN
};

/// Fixed field and receiver behind the SOLAR6 field table.
pub const SOLAR6_FIELD: PlantDesign = PlantDesign {
    heliostat_l: 12.0,
    heliostat_w: 12.0,
    tower_h: 250.0,
    rcv_h: 30.0,
    rcv_w: 30.0,
    n_heliostats: 10500,
    field_angle: 89.0,
    r_min: 0.5,
    r_max: 8.0,
    rcv_tubes: 1000,
    rcv_insul: 0.5,
    rcv_d_in: 0.04,
    rcv_d_out: 0.045,
    ..BASE_DESIGN
};

/// Fixed field of SOLAR7.
pub const SOLAR7_FIELD: PlantDesign = PlantDesign {
    heliostat_l: 9.0,
    heliostat_w: 9.0,
    tower_h: 100.0,
    n_heliostats: 900,
    field_angle: 60.0,
    r_min: 0.9,
    r_max: 5.0,
    ..BASE_DESIGN
};

/// Receiver inlet temperature when no storage loop is modelled (K).
pub const RECEIVER_INLET_T: f64 = 560.0;
/// Receiver outlet set point of SOLAR8 (K).
pub const SOLAR8_OUTLET_T: f64 = 840.0;
/// Design-point flux used for the SOLAR7 wall check (kW).
pub const SOLAR7_DESIGN_FLUX_KW: f64 = 45_000.0;
/// Tube wall temperature limit of SOLAR7 (K).
pub const SOLAR7_WALL_LIMIT: f64 = 1050.0;
/// Aperture width of the SOLAR5 receiver (m).
pub const SOLAR5_APERTURE_W: f64 = 6.0;
/// Margin of receiver outlet over turbine inlet (K).
pub const OUTLET_MARGIN: f64 = 25.0;
/// Output counted as nominal in SOLAR5 (kW).
pub const SOLAR5_NOMINAL_KW: f64 = 12_000.0;

const DAY_SPRING: u32 = 100;
const DAY_SUMMER: u32 = 180;
const DAY_SOLAR5: u32 = 150;

fn a(expr: Apriori, description: &'static str) -> OutputDef {
    OutputDef {
        class: OutputClass::Apriori,
        expr: Expr::Apriori(expr),
        description,
    }
}

fn d(sim: Sim, description: &'static str) -> OutputDef {
    OutputDef {
        class: OutputClass::Deterministic,
        expr: Expr::Sim(sim),
        description,
    }
}

fn s(sim: Sim, description: &'static str) -> OutputDef {
    OutputDef {
        class: OutputClass::Stochastic,
        expr: Expr::Sim(sim),
        description,
    }
}

const TOWER: &str = "tower at least twice the heliostat length";
const ORDER: &str = "minimum field radius below maximum";
const AREA: &str = "field surface below the limit (ha)";
const FIT: &str = "requested heliostats fit in the grid";
const RCV_D: &str = "receiver tube inner diameter below outer";
const RCV_FIT: &str = "receiver tubes fit in the cavity";
const RCV_P: &str = "receiver tube pressure below yield (MPa)";
const HOT: &str = "hot storage stays above the melting point (K)";
const COLD: &str = "cold storage stays above the melting point (K)";
const SG_OUT: &str = "steam generator outlet stays above the melting point (K)";
const OUTLET: &str = "receiver outlet hotter than turbine inlet (K)";
const COMPLIANCE: &str = "unmet demand within 1% (kWh)";
const SG_D: &str = "steam generator tube inner diameter below outer";
const SG_S: &str = "steam generator tube outer diameter below spacing";
const SG_P: &str = "steam generator tube pressure below yield (MPa)";

fn outputs(id: u32) -> (usize, Vec<OutputDef>) {
    use Apriori::*;
    match id {
        1 => (
            1,
            vec![
                s(Sim::NegIncident, "minus energy on the aperture (kWh)"),
                d(Sim::Budget(50e6), "cost below $50M"),
                a(Area(195.0), AREA),
                a(Tower, TOWER),
                a(Order, ORDER),
                d(Sim::Fit, FIT),
            ],
        ),
        2 => (
            1,
            vec![
                a(AreaObjective, "field surface (m^2)"),
                a(Area(400.0), AREA),
                s(Sim::Compliance, COMPLIANCE),
                d(Sim::Budget(300e6), "cost below $300M"),
                a(Tower, TOWER),
                a(Order, ORDER),
                d(Sim::Fit, FIT),
                s(Sim::RcvPressure, RCV_P),
                s(Sim::HotMelt, HOT),
                s(Sim::ColdMelt, COLD),
                a(TubesFit(11, 14, Width::Var(5)), RCV_FIT),
                a(Less(13, 14), RCV_D),
                d(Sim::OutletTemp, OUTLET),
            ],
        ),
        3 => (
            1,
            vec![
                d(Sim::Cost, "total investment cost ($)"),
                a(Area(80.0), AREA),
                s(Sim::Compliance, COMPLIANCE),
                a(Tower, TOWER),
                a(Order, ORDER),
                d(Sim::Fit, FIT),
                s(Sim::RcvPressure, RCV_P),
                s(Sim::HotMelt, HOT),
                s(Sim::ColdMelt, COLD),
                d(Sim::SgOutletMelt, SG_OUT),
                a(Less(18, 19), RCV_D),
                a(TubesFit(16, 19, Width::Var(5)), RCV_FIT),
                d(Sim::OutletTemp, OUTLET),
                s(Sim::StorageBack, "storage back to its initial energy (kWh)"),
            ],
        ),
        4 | 9 => {
            let nine = id == 9;
            let mut v = Vec::new();
            let p = if nine {
                v.push(s(Sim::NegElectric, "minus electric energy (kWh)"));
                v.push(s(Sim::Parasitics, "parasitic losses (kWh)"));
                v.push(d(Sim::Budget(1.2e9), "cost below $1.2B"));
                v.push(s(Sim::MinEnergy(120_000.0), "electric energy above 120 MWh (kWh)"));
                v.push(a(Area(500.0), AREA));
                2
            } else {
                v.push(d(Sim::Cost, "total investment cost ($)"));
                v.push(a(Area(200.0), AREA));
                v.push(s(Sim::Compliance, COMPLIANCE));
                1
            };
            v.extend([
                a(Tower, TOWER),
                a(Order, ORDER),
                d(Sim::Fit, FIT),
                s(Sim::RcvPressure, RCV_P),
                s(Sim::HotMelt, HOT),
                s(Sim::ColdMelt, COLD),
                s(Sim::SgOutletMelt, SG_OUT),
                a(Less(18, 19), RCV_D),
                a(TubesFit(16, 19, Width::Var(5)), RCV_FIT),
                d(Sim::OutletTemp, OUTLET),
                s(
                    Sim::ParasiticRatio(if nine { 0.20 } else { 0.18 }),
                    "parasitics below a share of electric energy (kWh)",
                ),
                a(Less(22, 23), SG_D),
                a(Less(23, 20), SG_S),
                d(Sim::SgPressure, SG_P),
            ]);
            (p, v)
        }
        5 => (
            1,
            vec![
                d(Sim::NegNominalShare, "minus share of hours at nominal output (%)"),
                d(Sim::Budget(100e6), "cost below $100M"),
                d(Sim::RcvPressure, RCV_P),
                d(Sim::HotMelt, HOT),
                d(Sim::ColdMelt, COLD),
                d(Sim::SgOutletMelt, SG_OUT),
                a(Less(9, 10), RCV_D),
                a(TubesFit(7, 10, Width::Fixed(SOLAR5_APERTURE_W)), RCV_FIT),
                d(Sim::OutletTemp, OUTLET),
                d(Sim::ParasiticRatio(0.18), "parasitics below 18% of electric energy (kWh)"),
                a(Less(13, 14), SG_D),
                a(Less(14, 11), SG_S),
                d(Sim::SgPressure, SG_P),
            ],
        ),
        6 => (
            1,
            vec![
                d(Sim::StorageCost, "storage cost ($)"),
                d(Sim::Compliance, COMPLIANCE),
                d(Sim::RcvPressure, RCV_P),
                d(Sim::HotMelt, HOT),
                d(Sim::ColdMelt, COLD),
                d(Sim::OutletTemp, OUTLET),
                d(Sim::StorageBack, "storage back to its initial energy (kWh)"),
            ],
        ),
        7 => (
            1,
            vec![
                s(Sim::NegReceiverEfficiency, "minus receiver efficiency"),
                d(Sim::Budget(45e6), "receiver cost below $45M"),
                s(Sim::RcvPressure, RCV_P),
                a(Less(6, 7), RCV_D),
                d(Sim::WallTemp(SOLAR7_WALL_LIMIT), "design-point tube wall temperature (K)"),
                a(TubesFit(4, 7, Width::Var(2)), RCV_FIT),
                s(Sim::ParasiticRatio(0.03), "parasitics below 3% of absorbed energy (kWh)"),
            ],
        ),
        8 => (
            2,
            vec![
                s(Sim::NegAbsorbed, "minus energy absorbed by the salt (kWh)"),
                d(Sim::Cost, "field, tower and receiver cost ($)"),
                a(Area(400.0), AREA),
                a(Tower, TOWER),
                a(Order, ORDER),
                d(Sim::Fit, FIT),
                s(Sim::RcvPressure, RCV_P),
                a(Less(12, 13), RCV_D),
                a(TubesFit(10, 13, Width::Var(5)), RCV_FIT),
                s(Sim::MinEnergy(250_000.0), "absorbed energy above 250 MWh (kWh)"),
                s(Sim::ParasiticRatio(0.08), "parasitics below 8% of absorbed energy (kWh)"),
            ],
        ),
        10 => (1, vec![d(Sim::Penalty, "storage cost with penalized violations")]),
        _ => (0, Vec::new()),
    }
}

fn titles(id: u32) -> (&'static str, &'static str) {
    match id {
        1 => ("SOLAR1.1", "maximize the energy collected by the heliostat field"),
        2 => ("SOLAR2.1", "minimize the field surface while meeting a 20 MW peak demand"),
        3 => ("SOLAR3.1", "minimize investment cost for 10 MW between noon and 18:00"),
        4 => ("SOLAR4.1", "minimize investment cost, detailed steam generator, 72 h summer demand"),
        5 => ("SOLAR5.1", "maximize the time at nominal output over 30 days"),
        6 => ("SOLAR6.1", "minimize storage cost for a 100 MW plant"),
        7 => ("SOLAR7.1", "maximize receiver efficiency"),
        8 => ("SOLAR8.1", "maximize absorbed energy and minimize field cost (biobjective)"),
        9 => ("SOLAR9.1", "maximize electric energy and minimize parasitics (biobjective)"),
        10 => ("SOLAR10.1", "SOLAR6.1 with penalized constraints, unconstrained"),
        _ => ("", ""),
    }
}

fn base_design(id: u32) -> PlantDesign {
    match id {
        2 => PlantDesign {
            hot_h: 14.0,
            hot_d: 22.0,
            idealized_sg: true,
            turbine: 3,
            ..BASE_DESIGN
        },
        3 => PlantDesign {
            idealized_sg: true,
            ..BASE_DESIGN
        },
        5 => PlantDesign {
            rcv_w: SOLAR5_APERTURE_W,
            ..SOLAR5_FIELD
        },
        6 | 10 => PlantDesign {
            idealized_sg: true,
            turbine: 7,
            cold_min_t: 530.0,
            ..SOLAR6_FIELD
        },
        7 => SOLAR7_FIELD,
        8 => PlantDesign {
            rcv_outlet_t: SOLAR8_OUTLET_T,
            ..BASE_DESIGN
        },
        _ => BASE_DESIGN,
    }
}

fn build(id: u32) -> InstanceSpec {
    let (name, title) = titles(id);
    let (p, outputs) = outputs(id);
    let layout = variables::layout(id);
    let (window, scope, multifidelity) = match id {
        1 => (Window { day: DAY_SPRING, hours: 24 }, Scope::Field, false),
        2 | 3 | 9 => (Window { day: DAY_SPRING, hours: 24 }, Scope::Plant, true),
        4 => (Window { day: DAY_SUMMER, hours: 72 }, Scope::Plant, true),
        5 => (Window { day: DAY_SOLAR5, hours: 720 }, Scope::TablePlant, false),
        6 | 10 => (Window { day: DAY_SPRING, hours: 24 }, Scope::TablePlant, false),
        _ => (Window { day: DAY_SPRING, hours: 24 }, Scope::Receiver, true),
    };
    let stochastic = outputs.iter().any(|o| o.class == OutputClass::Stochastic);
    let noise = if stochastic { noise_model(id) } else { NoiseModel::NONE };
    let demand_kw = match id {
        2 => crate::data::series(crate::data::DEMAND_SOLAR2),
        3 => crate::data::series(crate::data::DEMAND_SOLAR3),
        4 => crate::data::series(crate::data::DEMAND_SOLAR4),
        5 => crate::data::series(crate::data::DEMAND_SOLAR5),
        6 | 10 => crate::data::series(crate::data::DEMAND_SOLAR6),
        _ => Vec::new(),
    };
    let field_table_kw = match id {
        5 => crate::data::series(crate::data::SOLAR5_FIELD_CSV),
        6 | 10 => crate::data::series(crate::data::SOLAR6_FIELD_CSV),
        _ => Vec::new(),
    };
    InstanceSpec {
        id,
        name,
        title,
        variables: variables::variable_specs(id),
        layout,
        p,
        outputs,
        multifidelity,
        x0: DesignPoint::new(crate::data::numbers(crate::data::X0[id as usize - 1])),
        window,
        scope,
        noise,
        base: base_design(id),
        demand_kw,
        field_table_kw,
    }
}

fn noise_model(id: u32) -> NoiseModel {
    let base = NoiseModel {
        weather_sigma: 0.03,
        irradiance_sigma: 0.05,
        irradiance_rho: 0.98,
        demand_sigma: 0.02,
        outlet_bias_sigma: 1.5,
        outlet_sigma: 0.5,
    };
    match id {
        7 => NoiseModel {
            weather_sigma: 0.05,
            irradiance_sigma: 0.10,
            ..base
        },
        _ => base,
    }
}

/// Frozen specification of instance `id` (1..=10).
pub fn instance_spec(id: u32) -> Option<&'static InstanceSpec> {
    static SPECS: OnceLock<Vec<InstanceSpec>> = OnceLock::new();
    let specs = SPECS.get_or_init(|| (1..=10).map(build).collect());
    if (1..=10).contains(&id) {
        Some(&specs[id as usize - 1])
    } else {
        None
    }
}

/// All ten specifications in order.
pub fn all_specs() -> impl Iterator<Item = &'static InstanceSpec> {
    (1..=10).filter_map(instance_spec)
}
