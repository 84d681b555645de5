//! Pulse-level simulation of trapped-ion quantum computing.
//!
//! The crate models an `N`-ion chain whose atomic qubits share a single
//! vibrational (phonon) mode. On top of that state it provides:
//!
//! * [`dynamics`]: resonant laser pulses (carrier, red/blue sideband and the
//!   auxiliary-level phase gate) as exact 2×2 rotations, plus a numeric
//!   propagator of the full interaction-picture Hamiltonian used to check
//!   the rotating-wave approximation.
//! * [`compiler`]: lowering of Hadamard, CZ, CNOT and Bell-state circuits to
//!   pulse schedules, with text formats for circuits and schedules.
//! * [`cooling`]: Doppler cooling (averaged energy balance and a seeded
//!   Monte Carlo) and resolved-sideband cooling to the motional ground state.
//! * [`readout`]: bright/dark projective measurement with shot sampling.
//!
//! Basis convention: atomic bits are the major index (ion 0 is the most
//! significant bit, `g ↦ 0`, `e ↦ 1`) and the phonon number is the minor
//! index, so `flat = bits * d + n`.

pub mod compiler;
pub mod cooling;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod readout;
pub mod rng;
pub mod state;

pub use compiler::{Gate, PulseSchedule};
pub use dynamics::{LaserDrive, PulseInstruction, PulseKind};
pub use error::{Error, ErrorKind, Result};
pub use state::{ChainSpec, HybridState};

/// Reduced Planck constant in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant in J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Atomic mass unit in kg.
pub const AMU: f64 = 1.660_539_066_60e-27;
