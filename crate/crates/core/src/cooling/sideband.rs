use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::rng::run_rng;
use crate::state::{ChainSpec, HybridState};

/// Red-sideband π time on the `|g,n⟩ ↔ |e,n−1⟩` transition, `π/(ηΩ√n)`.
pub fn pi_pulse_time(n: usize, spec: &ChainSpec) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "|g,0⟩ has no red-sideband partner; π time undefined for n = 0".into(),
        ));
    }
    if spec.eta <= 0.0 {
        return Err(Error::InvalidParameter(
            "sideband cooling needs η > 0".into(),
        ));
    }
    Ok(std::f64::consts::PI / (spec.eta * spec.omega_rabi * (n as f64).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidebandOptions {
    /// Chance per cycle that the mode gains one phonon before the pulse.
    pub heating_probability: f64,
    pub seed: u64,
    /// Ion that carries the cooling transition.
    pub ion: usize,
}

impl Default for SidebandOptions {
    fn default() -> Self {
        SidebandOptions {
            heating_probability: 0.0,
            seed: 0,
            ion: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SidebandCycle {
    /// 1-based.
    pub cycle: usize,
    pub n_before: usize,
    pub pulse_time: f64,
    pub state_after: HybridState,
    /// `|⟨g…g,0|ψ⟩|²` after the cycle.
    pub fidelity_ground: f64,
}

impl SidebandCycle {
    /// `cycle,n_before,pulse_time_s,fidelity_ground`.
    pub fn csv(cycles: &[SidebandCycle]) -> String {
        let mut out = String::from("cycle,n_before,pulse_time_s,fidelity_ground\n");
        for c in cycles {
            out.push_str(&format!(
                "{},{},{:e},{}\n",
                c.cycle, c.n_before, c.pulse_time, c.fidelity_ground
            ));
        }
        out
    }
}

/// Incoherent relaxation `|e,m⟩ → |g,m⟩` of `ion`, merging populations.
fn decay(state: &mut HybridState, ion: usize) {
    let spec = state.spec().clone();
    let mask = spec.ion_mask(ion);
    let amps = state.amps_mut();
    for bits in (0..spec.atomic_dim()).filter(|b| b & mask != 0) {
        for m in 0..spec.fock_cutoff {
            let e = spec.flatten(bits, m);
            let g = spec.flatten(bits & !mask, m);
            let p = amps[g].norm_sqr() + amps[e].norm_sqr();
            amps[g] = C64::new(p.sqrt(), 0.0);
            amps[e] = C64::new(0.0, 0.0);
        }
    }
}

/// Raises every component by one phonon.
fn heat(state: &mut HybridState) -> Result<()> {
    let spec = state.spec().clone();
    let top = spec.fock_cutoff - 1;
    let amps = state.amps_mut();
    for bits in 0..spec.atomic_dim() {
        let amplitude = amps[spec.flatten(bits, top)].norm();
        if amplitude > 0.0 {
            return Err(Error::Truncation {
                level: top,
                cutoff: spec.fock_cutoff,
                amplitude,
            });
        }
        for m in (0..top).rev() {
            amps[spec.flatten(bits, m + 1)] = amps[spec.flatten(bits, m)];
        }
        amps[spec.flatten(bits, 0)] = C64::new(0.0, 0.0);
    }
    Ok(())
}

/// Resolved sideband cooling from `|g…g, n0⟩`.
///
/// Each cycle drives a red-sideband π pulse tuned to the current phonon level
/// (so it maps `|g,n⟩` fully onto `|e,n−1⟩`), then lets the ion decay back to
/// `|g⟩`. Without heating this takes exactly `n0` cycles.
pub fn sideband_cool(
    spec: &ChainSpec,
    n0: usize,
    options: &SidebandOptions,
) -> Result<Vec<SidebandCycle>> {
    spec.validate()?;
    spec.check_ion(options.ion)?;
    if n0 == 0 || n0 >= spec.fock_cutoff {
        return Err(Error::InvalidParameter(format!(
            "initial phonon number must satisfy 1 ≤ n0 < {}, got {n0}",
            spec.fock_cutoff
        )));
    }
    if !(0.0..1.0).contains(&options.heating_probability) {
        return Err(Error::InvalidParameter(format!(
            "heating probability must lie in [0, 1), got {}",
            options.heating_probability
        )));
    }
    let ground = HybridState::new_ground(spec.clone())?;
    let mut state = HybridState::basis(spec.clone(), 0, n0)?;
    let mut rng = run_rng(options.seed);
    let max_cycles = 100 * spec.fock_cutoff;
    let mut cycles = Vec::new();
    let level = |s: &HybridState| s.mean_phonon_number().round() as usize;

    while level(&state) > 0 {
        if cycles.len() >= max_cycles {
            return Err(Error::InvalidParameter(format!(
                "no ground state after {max_cycles} cycles; heating too strong"
            )));
        }
        if options.heating_probability > 0.0 && rng.gen::<f64>() < options.heating_probability {
            heat(&mut state)?;
        }
        let n_before = level(&state);
        let pulse_time = pi_pulse_time(n_before, spec)?;
        let beta = spec.eta * spec.omega_rabi * pulse_time;
        state.apply_red_sideband(options.ion, beta, 0.0)?;
        decay(&mut state, options.ion);
        state.renormalize();
        cycles.push(SidebandCycle {
            cycle: cycles.len() + 1,
            n_before,
            pulse_time,
            fidelity_ground: state.fidelity(&ground)?,
            state_after: state.clone(),
        });
    }
    Ok(cycles)
}
