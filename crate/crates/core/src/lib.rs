//! Deterministic concentrated-solar-power plant simulator and the ten SOLAR
//! blackbox optimization instances built on it.

pub mod bench;
pub mod cli;
pub mod data;
pub mod detrng;
pub mod economics;
pub mod evaluator;
pub mod heliofield;
pub mod instances;
pub mod model;
pub mod plant;
pub mod powerblock;
pub mod simulation;
pub mod thermal_loop;
pub mod vec3;
