//! Full plant design: every physical parameter an instance can expose.

use crate::heliofield::{Aperture, FieldParams};
use crate::thermal_loop::{ExchangerSpec, ReceiverSpec, TankSpec};

/// Cold tank height relative to the hot tank.
pub const COLD_HEIGHT_FACTOR: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantDesign {
    pub heliostat_l: f64,
    pub heliostat_w: f64,
    pub tower_h: f64,
    pub rcv_h: f64,
    pub rcv_w: f64,
    pub n_heliostats: u64,
    pub field_angle: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub rcv_outlet_t: f64,
    pub hot_h: f64,
    pub hot_d: f64,
    pub hot_insul: f64,
    pub cold_insul: f64,
    pub cold_min_t: f64,
    pub rcv_tubes: u32,
    pub rcv_insul: f64,
    pub rcv_d_in: f64,
    pub rcv_d_out: f64,
    pub sg_spacing: f64,
    pub sg_len: f64,
    pub sg_d_in: f64,
    pub sg_d_out: f64,
    pub sg_baffle_cut: f64,
    pub sg_baffles: u32,
    pub sg_tubes: u32,
    pub sg_shell_passes: u32,
    pub sg_tube_passes: u32,
    pub turbine: u32,
    pub idealized_sg: bool,
}

impl PlantDesign {
    pub fn field(&self) -> FieldParams {
        FieldParams {
            heliostat_w: self.heliostat_w,
            heliostat_l: self.heliostat_l,
            tower_h: self.tower_h,
            angular_width: self.field_angle,
            r_min: self.r_min,
            r_max: self.r_max,
        }
    }

    pub fn aperture(&self) -> Aperture {
        Aperture {
            height: self.rcv_h,
            width: self.rcv_w,
            center_z: self.tower_h,
        }
    }

    pub fn receiver(&self) -> ReceiverSpec {
        ReceiverSpec {
            aperture_h: self.rcv_h,
            aperture_w: self.rcv_w,
            n_tubes: self.rcv_tubes,
            d_in: self.rcv_d_in,
            d_out: self.rcv_d_out,
            insul_t: self.rcv_insul,
        }
    }

    pub fn hot_tank(&self) -> TankSpec {
        TankSpec {
            insul_t: self.hot_insul,
            height: self.hot_h,
            diameter: self.hot_d,
        }
    }

    pub fn cold_tank(&self) -> TankSpec {
        TankSpec {
            insul_t: self.cold_insul,
            height: self.hot_h * COLD_HEIGHT_FACTOR,
            diameter: self.hot_d,
        }
    }

    pub fn exchanger(&self) -> ExchangerSpec {
        ExchangerSpec {
            tube_spacing: self.sg_spacing,
            tube_len: self.sg_len,
            d_in: self.sg_d_in,
            d_out: self.sg_d_out,
            baffle_cut: self.sg_baffle_cut,
            n_baffles: self.sg_baffles,
            n_tubes: self.sg_tubes,
            n_shell_passes: self.sg_shell_passes,
            n_tube_passes: self.sg_tube_passes,
            idealized: self.idealized_sg,
            nominal_outlet_t: self.cold_min_t,
        }
    }
}
