//! Gate-to-pulse lowering.
//!
//! Schedules are chronological: the first pulse in the list acts first. In
//! operator notation a schedule `[p₀, p₁, p₂]` is the product `U₂ U₁ U₀`.
//!
//! Lowering recipes (phases are those of the 2×2 pulse unitary):
//!
//! | gate            | pulses                                                        |
//! |-----------------|---------------------------------------------------------------|
//! | `Rot(θ, ϕ)`     | `CARRIER(θ, ϕ + π/2)`                                         |
//! | `X`             | `CARRIER(π, 0)`  (= −iX)                                      |
//! | `Z`             | `CARRIER(π, 0)`, `CARRIER(π, π/2)`  (= iZ)                    |
//! | `H`             | `CARRIER(π/2, 3π/2)`, `CARRIER(π, π)`  (= iH)                 |
//! | `CZ(c, t)`      | `RSB_t(π, 3π/2)`, `AUXBSB_c(2π)`, `RSB_t(π, π/2)`             |
//! | `CNOT(c, t)`    | `H_t`, `CZ(c, t)`, `H_t`                                      |
//! | `Bell(a, b)`    | `H_a`, `CNOT(a, b)`                                           |
//!
//! `Rot(θ, ϕ)` takes `|0⟩` to `cos(θ/2)|0⟩ + e^{iϕ} sin(θ/2)|1⟩`.

mod format;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use nalgebra::DMatrix;

use crate::dynamics::{normalize_phase, PulseInstruction, PulseKind};
use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};
use crate::state::{ChainSpec, HybridState};

pub use format::{parse_circuit, parse_schedule, write_circuit, write_schedule};

/// Minimum phonon ground population accepted at the start of a CZ.
pub const PHONON_GROUND_TOLERANCE: f64 = 1e-9;

/// Abstract gates understood by the compiler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    /// Single-qubit rotation preparing `cos(θ/2)|0⟩ + e^{iϕ} sin(θ/2)|1⟩` from `|0⟩`.
    Rot {
        ion: usize,
        theta: f64,
        phi: f64,
    },
    H(usize),
    X(usize),
    Z(usize),
    Cz {
        control: usize,
        target: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    BellPrep {
        ion_a: usize,
        ion_b: usize,
    },
}

impl Gate {
    /// Rotation with both angles reduced to `[0, 2π)`.
    pub fn rot(ion: usize, theta: f64, phi: f64) -> Result<Gate> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidGate(format!(
                "non-finite rotation angles ({theta}, {phi})"
            )));
        }
        Ok(Gate::Rot {
            ion,
            theta: normalize_phase(theta),
            phi: normalize_phase(phi),
        })
    }

    pub fn cz(control: usize, target: usize) -> Result<Gate> {
        distinct(control, target)?;
        Ok(Gate::Cz { control, target })
    }

    pub fn cnot(control: usize, target: usize) -> Result<Gate> {
        distinct(control, target)?;
        Ok(Gate::Cnot { control, target })
    }

    pub fn bell(ion_a: usize, ion_b: usize) -> Result<Gate> {
        distinct(ion_a, ion_b)?;
        Ok(Gate::BellPrep { ion_a, ion_b })
    }

    pub fn ions(&self) -> Vec<usize> {
        match *self {
            Gate::Rot { ion, .. } | Gate::H(ion) | Gate::X(ion) | Gate::Z(ion) => vec![ion],
            Gate::Cz { control, target } | Gate::Cnot { control, target } => vec![control, target],
            Gate::BellPrep { ion_a, ion_b } => vec![ion_a, ion_b],
        }
    }

    pub fn validate(&self, spec: &ChainSpec) -> Result<()> {
        let ions = self.ions();
        for &ion in &ions {
            spec.check_ion(ion)?;
        }
        if ions.len() == 2 {
            distinct(ions[0], ions[1])?;
        }
        Ok(())
    }
}

fn distinct(a: usize, b: usize) -> Result<()> {
    if a == b {
        Err(Error::InvalidGate("control equals target".into()))
    } else {
        Ok(())
    }
}

impl fmt::Display for Gate {
    /// Circuit-file syntax, e.g. `CNOT 0 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rot { ion, theta, phi } => write!(f, "ROT {ion} {theta:?} {phi:?}"),
            Gate::H(ion) => write!(f, "H {ion}"),
            Gate::X(ion) => write!(f, "X {ion}"),
            Gate::Z(ion) => write!(f, "Z {ion}"),
            Gate::Cz { control, target } => write!(f, "CZ {control} {target}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::BellPrep { ion_a, ion_b } => write!(f, "BELL {ion_a} {ion_b}"),
        }
    }
}

/// Ordered pulse list plus provenance.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PulseSchedule {
    pulses: Vec<PulseInstruction>,
    /// Circuit the schedule was lowered from, if any.
    pub source: Vec<Gate>,
    /// [`ChainSpec::fingerprint`] of the spec it was validated against.
    pub spec_fingerprint: Option<String>,
}

impl PulseSchedule {
    pub fn from_pulses(pulses: Vec<PulseInstruction>) -> PulseSchedule {
        PulseSchedule {
            pulses,
            ..PulseSchedule::default()
        }
    }

    pub fn pulses(&self) -> &[PulseInstruction] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    fn extend(&mut self, other: PulseSchedule) {
        self.pulses.extend(other.pulses);
        self.source.extend(other.source);
    }

    fn with_source(mut self, gate: Gate) -> PulseSchedule {
        self.source = vec![gate];
        self
    }

    pub fn validate(&self, spec: &ChainSpec) -> Result<()> {
        for (index, pulse) in self.pulses.iter().enumerate() {
            pulse.validate(spec).map_err(|e| e.at_pulse(index))?;
        }
        Ok(())
    }

    /// Pulse indices at which a CZ sequence (swap, auxiliary phase, inverse
    /// swap) starts and the phonon mode must be in its ground state.
    pub fn phonon_checkpoints(&self) -> Vec<usize> {
        self.pulses
            .windows(3)
            .enumerate()
            .filter(|(_, w)| is_cz_triple(w))
            .map(|(i, _)| i)
            .collect()
    }
}

fn close_angle(a: f64, b: f64) -> bool {
    let diff = normalize_phase(a - b);
    diff < 1e-9 || TAU - diff < 1e-9
}

fn is_cz_triple(w: &[PulseInstruction]) -> bool {
    let (swap, aux, unswap) = (&w[0], &w[1], &w[2]);
    swap.kind == PulseKind::RedSideband
        && unswap.kind == PulseKind::RedSideband
        && aux.kind == PulseKind::AuxBlueSideband
        && swap.ion == unswap.ion
        && aux.ion != swap.ion
        && close_angle(swap.beta, PI)
        && close_angle(unswap.beta, PI)
        && close_angle(swap.phase, 1.5 * PI)
        && close_angle(unswap.phase, FRAC_PI_2)
        && aux.aux_cycles().map(|m| m % 2 != 0).unwrap_or(false)
}

/// `Rot(θ, ϕ)` as a single carrier pulse with phase `ϕ + π/2`.
pub fn compile_rotation(ion: usize, theta: f64, phi: f64) -> PulseSchedule {
    PulseSchedule::from_pulses(vec![PulseInstruction::carrier(ion, theta, phi + FRAC_PI_2)])
}

/// Carrier `(π/2, π/2)` followed by carrier `(π, π)`; the pair equals `iH`.
///
/// The first phase is `+π/2`: with `U(β, φ)` as defined in
/// [`crate::dynamics::resonant_unitary`], `φ = −π/2` would give `−iZHZ`.
pub fn compile_hadamard(ion: usize) -> PulseSchedule {
    PulseSchedule::from_pulses(vec![
        PulseInstruction::carrier(ion, FRAC_PI_2, FRAC_PI_2),
        PulseInstruction::carrier(ion, PI, PI),
    ])
}

pub fn compile_x(ion: usize) -> PulseSchedule {
    PulseSchedule::from_pulses(vec![PulseInstruction::carrier(ion, PI, 0.0)])
}

pub fn compile_z(ion: usize) -> PulseSchedule {
    PulseSchedule::from_pulses(vec![
        PulseInstruction::carrier(ion, PI, 0.0),
        PulseInstruction::carrier(ion, PI, FRAC_PI_2),
    ])
}

/// Red-sideband π pulse swapping the atomic and phonon qubits:
/// `|e,0⟩ → |g,1⟩`, `|g,1⟩ → −|e,0⟩` (phase 3π/2), or its inverse (phase π/2).
pub fn compile_swap_av(ion: usize, inverse: bool) -> PulseSchedule {
    let phase = if inverse { FRAC_PI_2 } else { 1.5 * PI };
    PulseSchedule::from_pulses(vec![PulseInstruction::red_sideband(ion, PI, phase)])
}

/// `|e,1⟩ → −|e,1⟩` through a full auxiliary-level cycle.
pub fn compile_cz_av(ion: usize) -> PulseSchedule {
    PulseSchedule::from_pulses(vec![PulseInstruction::aux_blue_sideband(ion, TAU)])
}

pub fn compile_cz(control: usize, target: usize) -> Result<PulseSchedule> {
    distinct(control, target)?;
    let mut schedule = compile_swap_av(target, false);
    schedule.extend(compile_cz_av(control));
    schedule.extend(compile_swap_av(target, true));
    Ok(schedule)
}

pub fn compile_cnot(control: usize, target: usize) -> Result<PulseSchedule> {
    distinct(control, target)?;
    let mut schedule = compile_hadamard(target);
    schedule.extend(compile_cz(control, target)?);
    schedule.extend(compile_hadamard(target));
    Ok(schedule)
}

pub fn compile_bell(ion_a: usize, ion_b: usize) -> Result<PulseSchedule> {
    distinct(ion_a, ion_b)?;
    let mut schedule = compile_hadamard(ion_a);
    schedule.extend(compile_cnot(ion_a, ion_b)?);
    Ok(schedule)
}

pub fn compile_gate(gate: &Gate) -> Result<PulseSchedule> {
    let schedule = match *gate {
        Gate::Rot { ion, theta, phi } => compile_rotation(ion, theta, phi),
        Gate::H(ion) => compile_hadamard(ion),
        Gate::X(ion) => compile_x(ion),
        Gate::Z(ion) => compile_z(ion),
        Gate::Cz { control, target } => compile_cz(control, target)?,
        Gate::Cnot { control, target } => compile_cnot(control, target)?,
        Gate::BellPrep { ion_a, ion_b } => compile_bell(ion_a, ion_b)?,
    };
    Ok(schedule.with_source(*gate))
}

/// Lowers a circuit gate by gate, validating ion indices against `spec`.
pub fn compile_circuit(circuit: &[Gate], spec: &ChainSpec) -> Result<PulseSchedule> {
    spec.validate()?;
    let mut schedule = PulseSchedule::default();
    for gate in circuit {
        gate.validate(spec)?;
        schedule.extend(compile_gate(gate)?);
    }
    schedule.spec_fingerprint = Some(spec.fingerprint());
    Ok(schedule)
}

/// Full-space matrix of a schedule on the truncated Hilbert space, built
/// column by column (`U[:, k] = schedule · |k⟩`).
pub fn schedule_unitary(spec: &ChainSpec, schedule: &PulseSchedule) -> Result<DMatrix<C64>> {
    spec.validate()?;
    schedule.validate(spec)?;
    let dim = spec.dim();
    let mut u = DMatrix::from_element(dim, dim, ZERO);
    let mut column = vec![ZERO; dim];
    for k in 0..dim {
        column.iter_mut().for_each(|a| *a = ZERO);
        column[k] = C64::new(1.0, 0.0);
        for pulse in schedule.pulses() {
            pulse.act(spec, &mut column);
        }
        for (row, a) in column.iter().enumerate() {
            u[(row, k)] = *a;
        }
    }
    Ok(u)
}

/// Restriction of a full-space matrix to the phonon-0 atomic block
/// (`2^N × 2^N`, rows and columns ordered by atomic bitstring).
pub fn atomic_block(spec: &ChainSpec, u: &DMatrix<C64>) -> DMatrix<C64> {
    let n = spec.atomic_dim();
    DMatrix::from_fn(n, n, |r, c| u[(spec.flatten(r, 0), spec.flatten(c, 0))])
}

/// Runs a schedule on a state. Before each CZ sequence the phonon ground
/// population must be at least `1 − 1e−9`.
pub fn simulate(state: &mut HybridState, schedule: &PulseSchedule) -> Result<()> {
    schedule.validate(state.spec())?;
    let checkpoints = schedule.phonon_checkpoints();
    for (index, pulse) in schedule.pulses().iter().enumerate() {
        if checkpoints.contains(&index) {
            let ground_population = state.phonon_distribution()[0];
            if ground_population < 1.0 - PHONON_GROUND_TOLERANCE {
                return Err(Error::PhononPrecondition { ground_population }.at_pulse(index));
            }
        }
        state.apply_pulse(pulse).map_err(|e| e.at_pulse(index))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{phase_aligned_error, unitarity_error};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spec(n: usize, d: usize) -> ChainSpec {
        ChainSpec::new(n, d).unwrap()
    }

    fn hadamard() -> DMatrix<C64> {
        let h = FRAC_1_SQRT_2;
        DMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)])
    }

    #[test]
    fn rotation_zero_is_identity() {
        let s = spec(1, 3);
        let u = schedule_unitary(&s, &compile_rotation(0, 0.0, 1.2)).unwrap();
        assert!(phase_aligned_error(&u, &DMatrix::identity(6, 6)).0 < 1e-15);
    }

    #[test]
    fn rotation_pi_prepares_one() {
        let s = spec(1, 2);
        let mut st = HybridState::new_ground(s.clone()).unwrap();
        simulate(&mut st, &compile_rotation(0, PI, FRAC_PI_2)).unwrap();
        let one = HybridState::basis(s, 1, 0).unwrap();
        assert!((st.fidelity(&one).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hadamard_pair_matches_matrix() {
        let s = spec(1, 2);
        let sched = compile_hadamard(0);
        assert_eq!(sched.len(), 2);
        let block = atomic_block(&s, &schedule_unitary(&s, &sched).unwrap());
        let (err, chi) = phase_aligned_error(&hadamard(), &block);
        assert!(err < 1e-10);
        // Global phase: the pulse pair equals iH.
        assert!((normalize_phase(chi) - 1.5 * PI).abs() < 1e-10);
    }

    #[test]
    fn hadamard_twice_is_identity_up_to_phase() {
        let s = spec(1, 3);
        let circuit = [Gate::H(0), Gate::H(0)];
        let u = schedule_unitary(&s, &compile_circuit(&circuit, &s).unwrap()).unwrap();
        assert!(phase_aligned_error(&DMatrix::identity(6, 6), &u).0 < 1e-10);
    }

    #[test]
    fn x_and_z_lowerings() {
        let s = spec(1, 2);
        let x = DMatrix::from_row_slice(2, 2, &[ZERO, c(1.0, 0.0), c(1.0, 0.0), ZERO]);
        let z = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), ZERO, ZERO, c(-1.0, 0.0)]);
        let ux = atomic_block(&s, &schedule_unitary(&s, &compile_x(0)).unwrap());
        let uz = atomic_block(&s, &schedule_unitary(&s, &compile_z(0)).unwrap());
        assert!(phase_aligned_error(&x, &ux).0 < 1e-12);
        assert!(phase_aligned_error(&z, &uz).0 < 1e-12);
    }

    #[test]
    fn swap_av_actions() {
        let s = spec(1, 3);
        let fwd = compile_swap_av(0, false);
        let mut e0 = HybridState::basis(s.clone(), 1, 0).unwrap();
        simulate(&mut e0, &fwd).unwrap();
        assert!((e0.amplitude(0, 1) - c(1.0, 0.0)).norm() < 1e-12);

        let mut g1 = HybridState::basis(s.clone(), 0, 1).unwrap();
        simulate(&mut g1, &fwd).unwrap();
        assert!((g1.amplitude(1, 0) - c(-1.0, 0.0)).norm() < 1e-12);

        let mut g0 = HybridState::new_ground(s.clone()).unwrap();
        simulate(&mut g0, &fwd).unwrap();
        assert_eq!(g0, HybridState::new_ground(s).unwrap());
    }

    #[test]
    fn swap_av_inverse_undoes_forward() {
        let s = spec(1, 4);
        let mut both = compile_swap_av(0, false);
        both.extend(compile_swap_av(0, true));
        let u = schedule_unitary(&s, &both).unwrap();
        assert!(crate::linalg::max_abs_diff(&u, &DMatrix::identity(8, 8)) < 1e-10);
    }

    #[test]
    fn cz_av_actions() {
        let s = spec(1, 3);
        let sched = compile_cz_av(0);
        for (bits, n, sign) in [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0)] {
            let mut st = HybridState::basis(s.clone(), bits, n).unwrap();
            simulate(&mut st, &sched).unwrap();
            assert!((st.amplitude(bits, n) - c(sign, 0.0)).norm() < 1e-15);
        }
        let mut twice = compile_cz_av(0);
        twice.extend(compile_cz_av(0));
        let u = schedule_unitary(&s, &twice).unwrap();
        assert!(crate::linalg::max_abs_diff(&u, &DMatrix::identity(6, 6)) < 1e-15);
    }

    #[test]
    fn cz_pulse_structure_and_errors() {
        let sched = compile_cz(0, 1).unwrap();
        assert_eq!(sched.len(), 3);
        assert_eq!(
            sched.pulses()[0],
            PulseInstruction::red_sideband(1, PI, 1.5 * PI)
        );
        assert_eq!(
            sched.pulses()[1],
            PulseInstruction::aux_blue_sideband(0, TAU)
        );
        assert_eq!(
            sched.pulses()[2],
            PulseInstruction::red_sideband(1, PI, FRAC_PI_2)
        );
        assert_eq!(sched.phonon_checkpoints(), vec![0]);
        assert!(matches!(compile_cz(1, 1), Err(Error::InvalidGate(_))));
        assert!(compile_cnot(0, 0).is_err());
        assert!(compile_bell(2, 2).is_err());
    }

    #[test]
    fn cnot_has_seven_pulses_and_keeps_gg() {
        let s = spec(2, 3);
        let sched = compile_cnot(0, 1).unwrap();
        assert_eq!(sched.len(), 7);
        assert_eq!(sched.phonon_checkpoints(), vec![2]);
        let mut st = HybridState::new_ground(s.clone()).unwrap();
        simulate(&mut st, &sched).unwrap();
        assert!((st.fidelity(&HybridState::new_ground(s).unwrap()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let s = spec(2, 2);
        let sched = compile_circuit(&[], &s).unwrap();
        assert!(sched.is_empty());
        let u = schedule_unitary(&s, &sched).unwrap();
        assert_eq!(u, DMatrix::identity(8, 8));
    }

    #[test]
    fn bell_equals_h_then_cnot() {
        let s = spec(2, 3);
        let a = compile_circuit(&[Gate::H(0), Gate::cnot(0, 1).unwrap()], &s).unwrap();
        let b = compile_circuit(&[Gate::bell(0, 1).unwrap()], &s).unwrap();
        assert_eq!(a.pulses(), b.pulses());
        assert_eq!(b.len(), 9);
    }

    #[test]
    fn compile_is_deterministic() {
        let s = spec(3, 4);
        let circuit = [
            Gate::rot(2, 0.3, 1.9).unwrap(),
            Gate::bell(0, 1).unwrap(),
            Gate::cz(2, 0).unwrap(),
        ];
        assert_eq!(
            compile_circuit(&circuit, &s).unwrap(),
            compile_circuit(&circuit, &s).unwrap()
        );
    }

    #[test]
    fn circuit_ion_range_is_checked() {
        let s = spec(2, 3);
        assert!(matches!(
            compile_circuit(&[Gate::H(2)], &s),
            Err(Error::IndexOutOfRange { index: 2, limit: 2 })
        ));
    }

    #[test]
    fn single_carrier_pi_matrix() {
        // carrier_unitary(π, 0) = −i σ_x on every phonon level.
        let s = spec(1, 3);
        let sched = PulseSchedule::from_pulses(vec![PulseInstruction::carrier(0, PI, 0.0)]);
        let u = schedule_unitary(&s, &sched).unwrap();
        for n in 0..3 {
            for (r, col, v) in [
                (0, 1, c(0.0, -1.0)),
                (1, 0, c(0.0, -1.0)),
                (0, 0, ZERO),
                (1, 1, ZERO),
            ] {
                assert!((u[(s.flatten(r, n), s.flatten(col, n))] - v).norm() < 1e-15);
            }
        }
        assert!(unitarity_error(&u) < 1e-14);
    }

    #[test]
    fn phonon_precondition_is_enforced() {
        let s = spec(2, 4);
        let mut st = HybridState::basis(s, 0b10, 1).unwrap();
        let err = simulate(&mut st, &compile_cnot(0, 1).unwrap()).unwrap_err();
        match err {
            Error::AtPulse { index, source } => {
                assert_eq!(index, 2);
                assert!(matches!(*source, Error::PhononPrecondition { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rotation_angles_are_reduced() {
        match Gate::rot(0, -FRAC_PI_2, 7.0).unwrap() {
            Gate::Rot { theta, phi, .. } => {
                assert!((theta - 1.5 * PI).abs() < 1e-15);
                assert!((phi - (7.0 - TAU)).abs() < 1e-15);
            }
            _ => unreachable!(),
        }
        assert!(Gate::rot(0, f64::NAN, 0.0).is_err());
    }
}
