//! Receiver, storage tanks, steam generator and the salt cycle tying them
//! together.

mod cycle;
mod exchanger;
mod receiver;
pub mod salt;
mod tank;

pub use cycle::{step_cycle, write_trace, CycleConfig, PlantState, StepInputs, StepRecord, ANTIFREEZE_MARGIN, HEEL_FRACTION};
pub use exchanger::{
    effectiveness, exchanger_required_flow, saturation_t, steam_enthalpy_rise, steam_flow_for, ExchangerResult,
    ExchangerSpec, SteamDemand, T_FEEDWATER, WATER_RHO,
};
pub use receiver::{receiver_absorb, receiver_absorb_from, ReceiverLosses, ReceiverResult, ReceiverSpec};
pub use tank::{tank_losses, TankLosses, TankSpec, TankState, WIND_SPEED};
