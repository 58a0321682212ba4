//! From a design point to the simulated outputs of one replication.

use super::{
    apriori_eval, AprioriEval, Expr, InstanceSpec, Scope, Sim, OUTLET_MARGIN, RECEIVER_INLET_T, SOLAR5_NOMINAL_KW,
    SOLAR7_DESIGN_FLUX_KW,
};
use crate::economics::{self, CostScope, YIELD_STRENGTH};
use crate::heliofield::GridError;
use crate::model::{DesignPoint, FAIL};
use crate::plant::PlantDesign;
use crate::powerblock::{turbine_lookup, TurbineRecord};
use crate::simulation::{
    incident_energy, run_plant, run_receiver, trace_field, FieldRun, NoiseStream, PlantRun, PlantRunConfig,
    ReceiverRun, Resolution,
};
use crate::thermal_loop::salt::{T_AMBIENT, T_MELT};
use crate::thermal_loop::{receiver_absorb, CycleConfig};

/// Everything shared by the replications of one request: the design, the
/// closed-form outputs and the noise-free field trace.
#[derive(Debug, Clone)]
pub struct Prepared<'s> {
    pub spec: &'s InstanceSpec,
    pub design: PlantDesign,
    pub apriori: AprioriEval,
    pub resolution: Resolution,
    pub field: Result<FieldRun, GridError>,
    demand_kw: Vec<f64>,
}

/// Outputs of one replication in `(f..., c...)` order; `FAIL` marks a
/// hidden-constraint failure.
pub type ReplicationOutputs = Vec<f64>;

enum Run {
    None,
    Receiver(ReceiverRun),
    Plant(Box<PlantRun>),
}

fn cost_scope(id: u32) -> CostScope {
    let all = CostScope {
        field: true,
        receiver: true,
        storage: true,
        power_block: true,
    };
    match id {
        1 | 8 => CostScope {
            storage: false,
            power_block: false,
            ..all
        },
        5 => CostScope { field: false, ..all },
        7 => CostScope {
            field: false,
            storage: false,
            power_block: false,
            ..all
        },
        _ => all,
    }
}

fn turbine(d: &PlantDesign) -> TurbineRecord {
    turbine_lookup(d.turbine).expect("turbine type checked against bounds")
}

/// Build the design and trace the field. Tracing is noise-free, so this
/// runs once per request.
pub fn prepare<'s>(spec: &'s InstanceSpec, x: &DesignPoint, resolution: Resolution) -> Prepared<'s> {
    let design = spec.design(x);
    let apriori = apriori_eval(spec, x);
    let field = match spec.scope {
        Scope::TablePlant => Ok(FieldRun {
            capacity: design.n_heliostats as usize,
            fit_slack: 0.0,
            heliostats: design.n_heliostats as usize,
            hourly_kw: spec.field_table_kw.clone(),
        }),
        _ => trace_field(&design, &spec.window, resolution.rays),
    };
    let demand_kw = if spec.id == 9 {
        vec![turbine(&design).p_max; spec.window.hours as usize + 1]
    } else {
        spec.demand_kw.clone()
    };
    Prepared {
        spec,
        design,
        apriori,
        resolution,
        field,
        demand_kw,
    }
}

impl Prepared<'_> {
    pub fn cycle_config(&self) -> CycleConfig {
        let d = &self.design;
        CycleConfig {
            receiver: d.receiver(),
            hot: d.hot_tank(),
            cold: d.cold_tank(),
            exchanger: d.exchanger(),
            turbine: turbine(d),
            rcv_target_t: d.rcv_outlet_t,
            ambient_t: T_AMBIENT,
        }
    }

    /// Full storage and power block run; `None` if the field failed.
    pub fn plant_run(&self, noise: &mut NoiseStream, keep_trace: bool) -> Option<PlantRun> {
        let field = self.field.as_ref().ok()?;
        let cfg = PlantRunConfig {
            cycle: self.cycle_config(),
            cold_min_t: self.design.cold_min_t,
            tower_h: self.design.tower_h,
            heliostats: field.heliostats,
            field_kw: &field.hourly_kw,
            demand_kw: &self.demand_kw,
            window: self.spec.window,
            steps: self.resolution.steps,
            nominal_kw: (self.spec.id == 5).then_some(SOLAR5_NOMINAL_KW),
            keep_trace,
        };
        Some(run_plant(&cfg, noise))
    }

    /// Receiver alone at a fixed inlet; `None` if the field failed.
    pub fn receiver_run(&self, noise: &mut NoiseStream) -> Option<ReceiverRun> {
        let field = self.field.as_ref().ok()?;
        Some(run_receiver(
            &self.design.receiver(),
            self.design.tower_h,
            &field.hourly_kw,
            &self.spec.window,
            self.resolution.steps,
            RECEIVER_INLET_T,
            self.design.rcv_outlet_t,
            noise,
        ))
    }

    /// One replication. Every stochastic output shares the same noise.
    pub fn replicate(&self, mut noise: NoiseStream) -> ReplicationOutputs {
        let spec = self.spec;
        let mut incident = None;
        let run = match spec.scope {
            Scope::Field => {
                incident = self
                    .field
                    .as_ref()
                    .ok()
                    .map(|f| incident_energy(&f.hourly_kw, &spec.window, self.resolution.steps, &mut noise));
                Run::None
            }
            Scope::Receiver => match self.receiver_run(&mut noise) {
                Some(r) if r.converged => Run::Receiver(r),
                _ => Run::None,
            },
            Scope::Plant | Scope::TablePlant => match self.plant_run(&mut noise, false) {
                Some(r) if r.converged => Run::Plant(Box::new(r)),
                _ => Run::None,
            },
        };
        spec.outputs
            .iter()
            .zip(&self.apriori.values)
            .map(|(o, a)| match o.expr {
                Expr::Apriori(_) => a.expect("closed form evaluated"),
                Expr::Sim(q) => self.quantity(q, &run, incident).unwrap_or(FAIL),
            })
            .collect()
    }

    fn quantity(&self, q: Sim, run: &Run, incident: Option<f64>) -> Option<f64> {
        let d = &self.design;
        let cost = || economics::total_cost(d, cost_scope(self.spec.id)).total;
        let plant = || match run {
            Run::Plant(p) => Some(p.as_ref()),
            _ => None,
        };
        let rcv = || match run {
            Run::Receiver(r) => Some(r),
            _ => None,
        };
        // Useful energy and parasitics for the ratio and minimum-energy
        // constraints: electric with a power block, absorbed otherwise.
        let useful = || match run {
            Run::Plant(p) => Some((p.electric_kwh, p.parasitics.total())),
            Run::Receiver(r) => {
                let heliostats = self.field.as_ref().ok()?.heliostats as u64;
                let ops = economics::heliostat_operation(heliostats, r.daylight_hours);
                Some((r.absorbed_kwh, r.pump_kwh + ops))
            }
            Run::None => None,
        };
        Some(match q {
            Sim::NegIncident => -incident?,
            Sim::Cost => cost(),
            Sim::StorageCost => economics::tank_cost(&d.hot_tank()) + economics::tank_cost(&d.cold_tank()),
            Sim::NegNominalShare => -100.0 * plant()?.nominal_hours / self.spec.window.hours as f64,
            Sim::NegReceiverEfficiency => {
                let r = rcv()?;
                if r.incident_kwh <= 0.0 {
                    return None;
                }
                -r.absorbed_kwh / r.incident_kwh
            }
            Sim::NegAbsorbed => -rcv()?.absorbed_kwh,
            Sim::NegElectric => -plant()?.electric_kwh,
            Sim::Parasitics => plant()?.parasitics.total(),
            Sim::Budget(b) => cost() - b,
            Sim::Compliance => {
                let p = plant()?;
                p.unmet_kwh - 0.01 * p.demand_kwh
            }
            Sim::MinEnergy(e) => e - useful()?.0,
            Sim::ParasiticRatio(r) => {
                let (e, par) = useful()?;
                par - r * e
            }
            Sim::StorageBack => {
                let p = plant()?;
                p.initial_hot_kwh - p.final_hot_kwh
            }
            Sim::HotMelt => T_MELT - plant()?.min_hot_t,
            Sim::ColdMelt => T_MELT - plant()?.min_cold_t,
            Sim::SgOutletMelt => {
                if d.idealized_sg {
                    T_MELT - d.cold_min_t
                } else {
                    T_MELT - plant()?.min_sg_outlet_t
                }
            }
            Sim::OutletTemp => turbine(d).inlet_t + OUTLET_MARGIN - d.rcv_outlet_t,
            Sim::RcvPressure => {
                let flow = match run {
                    Run::Plant(p) => p.max_rcv_flow,
                    Run::Receiver(r) => r.max_flow,
                    Run::None => return None,
                };
                let p = d.receiver().tube_pressure(flow);
                economics::tube_yield_margin(d.rcv_d_in, d.rcv_d_out, p, YIELD_STRENGTH)
            }
            Sim::SgPressure => economics::tube_yield_margin(d.sg_d_in, d.sg_d_out, turbine(d).inlet_p, YIELD_STRENGTH),
            Sim::Fit => self.field.as_ref().ok()?.fit_slack,
            Sim::WallTemp(limit) => {
                let r = receiver_absorb(&d.receiver(), SOLAR7_DESIGN_FLUX_KW, RECEIVER_INLET_T, d.rcv_outlet_t);
                if !r.converged {
                    return None;
                }
                r.wall_t - limit
            }
            Sim::Penalty => return None,
        })
    }
}

/// SOLAR10 objective from SOLAR6 outputs `(h1, c1..c6)`.
pub fn penalty(solar6: &[f64]) -> f64 {
    if solar6.iter().any(|&v| v == FAIL) {
        return FAIL;
    }
    let g: Vec<f64> = solar6[1..].iter().map(|&c| crate::model::violation(c)).collect();
    let g2 = 2e-6 * g[1];
    solar6[0] / 1e6 + (g[0] * g[0] + g2 * g2 + g[2] * g[2] + g[3] * g[3] + g[4] * g[4] + g[5] * g[5]) / 2.0
}
