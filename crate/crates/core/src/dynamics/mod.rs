//! Laser-ion dynamics.
//!
//! Resonant pulses are applied analytically as 2×2 rotations on the pairs of
//! basis states each resonance connects:
//!
//! | kind            | pair                         | effective area |
//! |-----------------|------------------------------|----------------|
//! | carrier         | `|g,n⟩ ↔ |e,n⟩`              | `β`            |
//! | red sideband    | `|g,n⟩ ↔ |e,n−1⟩`            | `β√n`          |
//! | blue sideband   | `|g,n⟩ ↔ |e,n+1⟩`            | `β√(n+1)`      |
//!
//! For sidebands `β = ηΩt` is referenced to the `n = 1` rung. The rotation is
//!
//! ```text
//! U(β, φ) = [[cos(β/2),           −i e^{−iφ} sin(β/2)],
//!            [−i e^{iφ} sin(β/2),  cos(β/2)          ]]
//! ```
//!
//! with the ground-side state first. The phase stored in a
//! [`PulseInstruction`] is the one that appears in this matrix (the laser
//! phase φ for the carrier, φ̃ = φ + π/2 for sidebands).
//!
//! The numeric propagator in [`propagate`] integrates the full
//! three-resonance interaction Hamiltonian instead, and is used to measure
//! how well the resonant (rotating-wave) picture holds.

mod hamiltonian;
mod propagate;
mod pulse;
mod rwa;

pub use hamiltonian::{full_interaction_hamiltonian, LaserDrive};
pub use propagate::{default_dt_max, MAX_STEPS};
pub use pulse::{
    normalize_phase, resonant_unitary, PulseInstruction, PulseKind, TRUNCATION_AMPLITUDE,
};
pub use rwa::{rsb_rwa_check, rwa_scan, RwaRow};

/// The carrier rotation `U(β, φ)` on `{|g,n⟩, |e,n⟩}`.
pub fn carrier_unitary(beta: f64, phase: f64) -> crate::linalg::Unitary2 {
    resonant_unitary(beta, phase)
}
