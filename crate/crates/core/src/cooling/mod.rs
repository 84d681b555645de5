//! Laser cooling to the motional ground state.
//!
//! Doppler cooling treats the ion classically in one dimension; sideband
//! cooling walks a Fock state down the ladder with red-sideband π pulses and
//! idealized spontaneous decay.

mod doppler;
mod sideband;

pub use doppler::{
    doppler_ensemble, doppler_mc_run, mean_energy_step, pseudo_temperature, recoil_energy,
    recoil_terminal_speed, windowed_mean_energy, CoolingEvent, CoolingTrajectory, DopplerParams,
    EventType, REJECTION_LIMIT,
};
pub use sideband::{pi_pulse_time, sideband_cool, SidebandCycle, SidebandOptions};
