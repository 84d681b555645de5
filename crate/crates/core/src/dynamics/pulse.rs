use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Unitary2, C64};
use crate::state::{rotate_pair, ChainSpec, HybridState};

/// Amplitude above which a state is considered to have leaked onto the top
/// retained phonon level.
pub const TRUNCATION_AMPLITUDE: f64 = 1e-8;

/// Which resonance a pulse drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PulseKind {
    Carrier,
    RedSideband,
    BlueSideband,
    /// Closed 2π·m cycle `|e,1⟩ → |ẽ,0⟩ → |e,1⟩` through an auxiliary level.
    AuxBlueSideband,
}

impl PulseKind {
    pub fn mnemonic(self) -> &'static str {
        match self {
            PulseKind::Carrier => "CARRIER",
            PulseKind::RedSideband => "RSB",
            PulseKind::BlueSideband => "BSB",
            PulseKind::AuxBlueSideband => "AUXBSB",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<PulseKind> {
        match s {
            "CARRIER" => Some(PulseKind::Carrier),
            "RSB" => Some(PulseKind::RedSideband),
            "BSB" => Some(PulseKind::BlueSideband),
            "AUXBSB" => Some(PulseKind::AuxBlueSideband),
            _ => None,
        }
    }
}

/// One laser pulse addressed to a single ion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseInstruction {
    pub kind: PulseKind,
    pub ion: usize,
    /// Pulse area: `Ωt` for the carrier, `ηΩt` for sidebands.
    pub beta: f64,
    /// Phase in `[0, 2π)`; zero for the auxiliary pulse.
    pub phase: f64,
}

/// Reduces an angle to `[0, 2π)`.
pub fn normalize_phase(phase: f64) -> f64 {
    let r = phase.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `U(β, φ)` with the ground-side basis state first.
pub fn resonant_unitary(beta: f64, phase: f64) -> Unitary2 {
    let (s, c) = (beta / 2.0).sin_cos();
    let minus_i = C64::new(0.0, -1.0);
    Unitary2::new(
        C64::new(c, 0.0),
        minus_i * Complex64::from_polar(s, -phase),
        minus_i * Complex64::from_polar(s, phase),
        C64::new(c, 0.0),
    )
}

impl PulseInstruction {
    pub fn new(kind: PulseKind, ion: usize, beta: f64, phase: f64) -> PulseInstruction {
        let phase = match kind {
            PulseKind::AuxBlueSideband => 0.0,
            _ => normalize_phase(phase),
        };
        PulseInstruction {
            kind,
            ion,
            beta,
            phase,
        }
    }

    pub fn carrier(ion: usize, beta: f64, phase: f64) -> PulseInstruction {
        PulseInstruction::new(PulseKind::Carrier, ion, beta, phase)
    }

    pub fn red_sideband(ion: usize, beta: f64, phase: f64) -> PulseInstruction {
        PulseInstruction::new(PulseKind::RedSideband, ion, beta, phase)
    }

    pub fn blue_sideband(ion: usize, beta: f64, phase: f64) -> PulseInstruction {
        PulseInstruction::new(PulseKind::BlueSideband, ion, beta, phase)
    }

    pub fn aux_blue_sideband(ion: usize, beta: f64) -> PulseInstruction {
        PulseInstruction::new(PulseKind::AuxBlueSideband, ion, beta, 0.0)
    }

    /// Number of full 2π cycles of an auxiliary pulse.
    pub fn aux_cycles(&self) -> Result<i64> {
        let m = self.beta / TAU;
        let rounded = m.round();
        if !m.is_finite() || (m - rounded).abs() > 1e-9 {
            return Err(Error::InvalidPulse(format!(
                "auxiliary blue sideband area {} is not a multiple of 2π",
                self.beta
            )));
        }
        Ok(rounded as i64)
    }

    pub fn validate(&self, spec: &ChainSpec) -> Result<()> {
        spec.check_ion(self.ion)?;
        if !self.beta.is_finite() || !self.phase.is_finite() {
            return Err(Error::InvalidPulse(format!(
                "non-finite pulse parameters (beta {}, phase {})",
                self.beta, self.phase
            )));
        }
        if self.kind == PulseKind::AuxBlueSideband {
            self.aux_cycles()?;
        }
        Ok(())
    }

    /// Applies the pulse to raw amplitudes as an operator on the truncated
    /// space. Unpartnered states at the cutoff are left untouched.
    /// The instruction must already be validated.
    pub(crate) fn act(&self, spec: &ChainSpec, amps: &mut [C64]) {
        let d = spec.fock_cutoff;
        let mask = spec.ion_mask(self.ion);
        let ground_configs = (0..spec.atomic_dim()).filter(|bits| bits & mask == 0);
        match self.kind {
            PulseKind::Carrier => {
                let u = resonant_unitary(self.beta, self.phase);
                for bits in ground_configs {
                    for n in 0..d {
                        rotate_pair(
                            amps,
                            spec.flatten(bits, n),
                            spec.flatten(bits | mask, n),
                            &u,
                        );
                    }
                }
            }
            PulseKind::RedSideband => {
                let rungs: Vec<Unitary2> = (1..d)
                    .map(|n| resonant_unitary(self.beta * (n as f64).sqrt(), self.phase))
                    .collect();
                for bits in ground_configs {
                    for n in 1..d {
                        rotate_pair(
                            amps,
                            spec.flatten(bits, n),
                            spec.flatten(bits | mask, n - 1),
                            &rungs[n - 1],
                        );
                    }
                }
            }
            PulseKind::BlueSideband => {
                let rungs: Vec<Unitary2> = (0..d - 1)
                    .map(|n| resonant_unitary(self.beta * ((n + 1) as f64).sqrt(), self.phase))
                    .collect();
                for bits in ground_configs {
                    for (n, u) in rungs.iter().enumerate() {
                        rotate_pair(
                            amps,
                            spec.flatten(bits, n),
                            spec.flatten(bits | mask, n + 1),
                            u,
                        );
                    }
                }
            }
            PulseKind::AuxBlueSideband => {
                // Validated beforehand, so the cycle count is an integer.
                let odd = self
                    .aux_cycles()
                    .map(|m| m.rem_euclid(2) == 1)
                    .unwrap_or(false);
                if odd {
                    for bits in (0..spec.atomic_dim()).filter(|bits| bits & mask != 0) {
                        let idx = spec.flatten(bits, 1);
                        amps[idx] = -amps[idx];
                    }
                }
            }
        }
    }
}

impl fmt::Display for PulseInstruction {
    /// The schedule line: `CARRIER ion beta phase` or `AUXBSB ion beta`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PulseKind::AuxBlueSideband => write!(f, "AUXBSB {} {:?}", self.ion, self.beta),
            kind => write!(
                f,
                "{} {} {:?} {:?}",
                kind.mnemonic(),
                self.ion,
                self.beta,
                self.phase
            ),
        }
    }
}

fn top_level_leak(spec: &ChainSpec, amps: &[C64]) -> Option<f64> {
    let top = spec.fock_cutoff - 1;
    (0..spec.atomic_dim())
        .map(|bits| amps[spec.flatten(bits, top)].norm())
        .filter(|&a| a > TRUNCATION_AMPLITUDE)
        .reduce(f64::max)
}

impl HybridState {
    /// Applies a validated pulse. Blue-sideband pulses refuse to leave
    /// amplitude above [`TRUNCATION_AMPLITUDE`] on the top phonon level; the
    /// state is left untouched when that happens.
    pub fn apply_pulse(&mut self, pulse: &PulseInstruction) -> Result<()> {
        pulse.validate(self.spec())?;
        let spec = self.spec().clone();
        if pulse.kind == PulseKind::BlueSideband {
            let mut scratch = self.amplitudes().to_vec();
            pulse.act(&spec, &mut scratch);
            if let Some(amplitude) = top_level_leak(&spec, &scratch) {
                return Err(Error::Truncation {
                    level: spec.fock_cutoff - 1,
                    cutoff: spec.fock_cutoff,
                    amplitude,
                });
            }
            self.amps_mut().copy_from_slice(&scratch);
        } else {
            pulse.act(&spec, self.amps_mut());
        }
        Ok(())
    }

    pub fn apply_carrier(&mut self, ion: usize, beta: f64, phase: f64) -> Result<()> {
        self.apply_pulse(&PulseInstruction::carrier(ion, beta, phase))
    }

    pub fn apply_red_sideband(&mut self, ion: usize, beta: f64, phase: f64) -> Result<()> {
        self.apply_pulse(&PulseInstruction::red_sideband(ion, beta, phase))
    }

    pub fn apply_blue_sideband(&mut self, ion: usize, beta: f64, phase: f64) -> Result<()> {
        self.apply_pulse(&PulseInstruction::blue_sideband(ion, beta, phase))
    }

    pub fn apply_aux_blue_sideband(&mut self, ion: usize, beta: f64) -> Result<()> {
        self.apply_pulse(&PulseInstruction::aux_blue_sideband(ion, beta))
    }

    /// Applies pulses in order, tagging any error with the pulse index.
    pub fn apply_pulses<'a>(
        &mut self,
        pulses: impl IntoIterator<Item = &'a PulseInstruction>,
    ) -> Result<()> {
        for (index, pulse) in pulses.into_iter().enumerate() {
            self.apply_pulse(pulse).map_err(|e| e.at_pulse(index))?;
        }
        Ok(())
    }
}
