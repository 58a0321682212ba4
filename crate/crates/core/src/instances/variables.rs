//! The 29 plant parameters that instances may expose as variables.

use crate::model::{VarKind, VariableSpec};
use crate::plant::PlantDesign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    HeliostatL,
    HeliostatW,
    TowerH,
    RcvH,
    RcvW,
    Heliostats,
    FieldAngle,
    RMin,
    RMax,
    RcvOutletT,
    HotH,
    HotD,
    HotInsul,
    ColdInsul,
    ColdMinT,
    RcvTubes,
    RcvInsul,
    RcvDIn,
    RcvDOut,
    SgSpacing,
    SgLen,
    SgDIn,
    SgDOut,
    SgBaffleCut,
    SgBaffles,
    SgTubes,
    SgShellPasses,
    SgTubePasses,
    Turbine,
}

impl Var {
    pub fn kind(self) -> VarKind {
        use Var::*;
        match self {
            Heliostats | RcvTubes | SgBaffles | SgTubes | SgShellPasses | SgTubePasses => VarKind::Integer,
            Turbine => VarKind::Categorical,
            _ => VarKind::Continuous,
        }
    }

    pub fn symbol(self) -> &'static str {
        use Var::*;
        match self {
            HeliostatL => "L_hf",
            HeliostatW => "W_hf",
            TowerH => "H_twr",
            RcvH => "H_rcv",
            RcvW => "W_rcv",
            Heliostats => "N_hf",
            FieldAngle => "theta_hf",
            RMin => "R_hf_min",
            RMax => "R_hf_max",
            RcvOutletT => "T_rcv_out",
            HotH => "H_hot",
            HotD => "d_hot",
            HotInsul => "t_hot",
            ColdInsul => "t_cold",
            ColdMinT => "T_cold_min",
            RcvTubes => "N_rcv_tub",
            RcvInsul => "t_rcv",
            RcvDIn => "d_rcv",
            RcvDOut => "D_rcv",
            SgSpacing => "S_t",
            SgLen => "L_sg",
            SgDIn => "d_sg",
            SgDOut => "D_sg",
            SgBaffleCut => "H_sg_baf",
            SgBaffles => "N_sg_baf",
            SgTubes => "N_sg_tub",
            SgShellPasses => "N_sg_sh_pass",
            SgTubePasses => "N_sg_tub_pass",
            Turbine => "ST",
        }
    }

    pub fn unit(self) -> &'static str {
        use Var::*;
        match self {
            HeliostatL | HeliostatW | TowerH | RcvH | RcvW | HotH | HotD | HotInsul | ColdInsul | RcvInsul
            | RcvDIn | RcvDOut | SgSpacing | SgLen | SgDIn | SgDOut => "m",
            FieldAngle => "deg",
            RMin | RMax => "x H_twr",
            RcvOutletT | ColdMinT => "K",
            SgBaffleCut => "ratio",
            _ => "-",
        }
    }

    pub fn description(self) -> &'static str {
        use Var::*;
        match self {
            HeliostatL => "heliostat length",
            HeliostatW => "heliostat width",
            TowerH => "tower height",
            RcvH => "receiver aperture height",
            RcvW => "receiver aperture width",
            Heliostats => "number of heliostats",
            FieldAngle => "field angular half-width",
            RMin => "minimum distance from tower",
            RMax => "maximum distance from tower",
            RcvOutletT => "receiver outlet temperature",
            HotH => "hot storage height",
            HotD => "hot storage diameter",
            HotInsul => "hot storage insulation thickness",
            ColdInsul => "cold storage insulation thickness",
            ColdMinT => "minimum cold storage temperature",
            RcvTubes => "receiver number of tubes",
            RcvInsul => "receiver insulation thickness",
            RcvDIn => "receiver tube inner diameter",
            RcvDOut => "receiver tube outer diameter",
            SgSpacing => "steam generator tube spacing",
            SgLen => "steam generator tube length",
            SgDIn => "steam generator tube inner diameter",
            SgDOut => "steam generator tube outer diameter",
            SgBaffleCut => "baffle cut",
            SgBaffles => "number of baffles",
            SgTubes => "number of steam generator tubes",
            SgShellPasses => "number of shell passes",
            SgTubePasses => "number of tube passes",
            Turbine => "turbine type",
        }
    }

    /// Write a coordinate into the design.
    pub fn apply(self, d: &mut PlantDesign, v: f64) {
        use Var::*;
        match self {
            HeliostatL => d.heliostat_l = v,
            HeliostatW => d.heliostat_w = v,
            TowerH => d.tower_h = v,
            RcvH => d.rcv_h = v,
            RcvW => d.rcv_w = v,
            Heliostats => d.n_heliostats = v as u64,
            FieldAngle => d.field_angle = v,
            RMin => d.r_min = v,
            RMax => d.r_max = v,
            RcvOutletT => d.rcv_outlet_t = v,
            HotH => d.hot_h = v,
            HotD => d.hot_d = v,
            HotInsul => d.hot_insul = v,
            ColdInsul => d.cold_insul = v,
            ColdMinT => d.cold_min_t = v,
            RcvTubes => d.rcv_tubes = v as u32,
            RcvInsul => d.rcv_insul = v,
            RcvDIn => d.rcv_d_in = v,
            RcvDOut => d.rcv_d_out = v,
            SgSpacing => d.sg_spacing = v,
            SgLen => d.sg_len = v,
            SgDIn => d.sg_d_in = v,
            SgDOut => d.sg_d_out = v,
            SgBaffleCut => d.sg_baffle_cut = v,
            SgBaffles => d.sg_baffles = v as u32,
            SgTubes => d.sg_tubes = v as u32,
            SgShellPasses => d.sg_shell_passes = v as u32,
            SgTubePasses => d.sg_tube_passes = v as u32,
            Turbine => d.turbine = v as u32,
        }
    }
}

/// Bounds of a variable in an instance.
pub fn bounds(id: u32, v: Var) -> (f64, f64) {
    use Var::*;
    let inf = f64::INFINITY;
    match v {
        HeliostatL | HeliostatW => (1.0, 40.0),
        TowerH => (20.0, 250.0),
        RcvH | RcvW => (1.0, 30.0),
        Heliostats => (1.0, inf),
        FieldAngle => (1.0, 89.0),
        RMin => (0.0, 20.0),
        RMax => (1.0, 20.0),
        RcvOutletT => (793.0, 995.0),
        HotH => match id {
            5 => (1.0, 30.0),
            6 | 10 => (2.0, 50.0),
            _ => (1.0, 50.0),
        },
        HotD => match id {
            6 | 10 => (2.0, 30.0),
            _ => (1.0, 30.0),
        },
        HotInsul | ColdInsul => match id {
            5 => (0.01, 2.0),
            _ => (0.01, 5.0),
        },
        ColdMinT => (495.0, 650.0),
        RcvTubes => match id {
            2 | 3 => (1.0, 9424.0),
            5 => (1.0, 1884.0),
            7 => (1.0, 8567.0),
            _ => (1.0, 7853.0),
        },
        RcvInsul => match id {
            5 => (0.10, 2.0),
            _ => (0.01, 5.0),
        },
        RcvDIn => (0.005, 0.1),
        RcvDOut => match id {
            4 | 8 | 9 => (0.006, 0.1),
            7 => (0.0055, 0.1),
            _ => (0.005, 0.1),
        },
        SgSpacing => match id {
            5 => (0.006, 0.2),
            _ => (0.007, 0.2),
        },
        SgLen => (0.5, 10.0),
        SgDIn => (0.005, 0.1),
        SgDOut => (0.006, 0.1),
        SgBaffleCut => (0.15, 0.4),
        SgBaffles => (2.0, inf),
        SgTubes => (1.0, inf),
        SgShellPasses => (1.0, 10.0),
        SgTubePasses => (1.0, 9.0),
        Turbine => (1.0, 8.0),
    }
}

const FIELD: [Var; 9] = [
    Var::HeliostatL,
    Var::HeliostatW,
    Var::TowerH,
    Var::RcvH,
    Var::RcvW,
    Var::Heliostats,
    Var::FieldAngle,
    Var::RMin,
    Var::RMax,
];
const RECEIVER: [Var; 4] = [Var::RcvTubes, Var::RcvInsul, Var::RcvDIn, Var::RcvDOut];
const STORAGE: [Var; 5] = [Var::HotH, Var::HotD, Var::HotInsul, Var::ColdInsul, Var::ColdMinT];
const EXCHANGER: [Var; 9] = [
    Var::SgSpacing,
    Var::SgLen,
    Var::SgDIn,
    Var::SgDOut,
    Var::SgBaffleCut,
    Var::SgBaffles,
    Var::SgTubes,
    Var::SgShellPasses,
    Var::SgTubePasses,
];

/// Variables of an instance in `x` order.
pub fn layout(id: u32) -> Vec<Var> {
    let mut v = Vec::new();
    match id {
        1 => v.extend(FIELD),
        2 => {
            v.extend(FIELD);
            v.push(Var::RcvOutletT);
            v.extend(RECEIVER);
        }
        3 => {
            v.extend(FIELD);
            v.push(Var::RcvOutletT);
            v.extend(STORAGE);
            v.extend(RECEIVER);
            v.push(Var::Turbine);
        }
        4 | 9 => {
            v.extend(FIELD);
            v.push(Var::RcvOutletT);
            v.extend(STORAGE);
            v.extend(RECEIVER);
            v.extend(EXCHANGER);
            v.push(Var::Turbine);
        }
        5 => {
            v.push(Var::RcvOutletT);
            v.extend(STORAGE);
            v.extend(RECEIVER);
            v.extend(EXCHANGER);
            v.push(Var::Turbine);
        }
        6 | 10 => {
            v.push(Var::RcvOutletT);
            v.extend(&STORAGE[..4]);
        }
        7 => {
            v.extend([Var::RcvH, Var::RcvW, Var::RcvOutletT]);
            v.extend(RECEIVER);
        }
        8 => {
            v.extend(FIELD);
            v.extend(RECEIVER);
        }
        _ => {}
    }
    v
}

pub fn variable_specs(id: u32) -> Vec<VariableSpec> {
    layout(id)
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let (lower, upper) = bounds(id, v);
            VariableSpec {
                index: i + 1,
                kind: v.kind(),
                lower,
                upper,
                unit: v.unit(),
                symbol: v.symbol(),
                description: v.description(),
            }
        })
        .collect()
}
