//! Browser bindings for three small experiments: Rabi flopping on the three
//! resonances, a Doppler cooling trajectory, and compiling + sampling a
//! circuit. The `*_impl` functions are plain Rust so they test natively.

use iontrap_core::compiler::{compile_circuit, parse_circuit, simulate, write_schedule};
use iontrap_core::cooling::{doppler_mc_run, DopplerParams};
use iontrap_core::readout::{estimate_probabilities, sample_shots, Detector};
use iontrap_core::{ChainSpec, HybridState, PulseKind, Result};
use wasm_bindgen::prelude::*;

const DEMO_CUTOFF: usize = 24;

/// Excited-state population after a pulse of area `β` on `|g,n⟩`, sampled at
/// `points` areas evenly spaced in `[0, beta_max]`.
pub fn rabi_curve_impl(kind: &str, n: usize, points: usize, beta_max: f64) -> Result<Vec<f64>> {
    let kind = PulseKind::from_mnemonic(kind)
        .filter(|k| *k != PulseKind::AuxBlueSideband)
        .ok_or_else(|| {
            iontrap_core::Error::InvalidParameter(format!("unknown resonance `{kind}`"))
        })?;
    let spec = ChainSpec::new(1, DEMO_CUTOFF)?;
    let start = HybridState::basis(spec, 0, n)?;
    (0..points)
        .map(|i| {
            let beta = beta_max * i as f64 / (points.max(2) - 1) as f64;
            let mut s = start.clone();
            match kind {
                PulseKind::Carrier => s.apply_carrier(0, beta, 0.0)?,
                PulseKind::RedSideband => s.apply_red_sideband(0, beta, 0.0)?,
                _ => s.apply_blue_sideband(0, beta, 0.0)?,
            }
            Ok(s.atomic_distribution()[1])
        })
        .collect()
}

/// Velocities (in units of ħk/M) after each event of one Monte Carlo run,
/// starting at `initial` ħk/M towards the laser.
pub fn doppler_trajectory_impl(seed: u64, initial: f64, max_events: usize) -> Result<Vec<f64>> {
    let base = DopplerParams::default();
    let vr = base.recoil_velocity();
    let p = DopplerParams {
        seed,
        initial_speed: initial * vr,
        ..base
    };
    let run = doppler_mc_run(&p, max_events)?;
    Ok(std::iter::once(initial)
        .chain(run.events.iter().map(|e| e.velocity / vr))
        .collect())
}

/// Compiled schedule text plus sampled outcome counts.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitRun {
    schedule: String,
    patterns: Vec<String>,
    counts: Vec<u32>,
    probabilities: Vec<f64>,
}

#[wasm_bindgen]
impl CircuitRun {
    #[wasm_bindgen(getter)]
    pub fn schedule(&self) -> String {
        self.schedule.clone()
    }

    /// Comma-separated outcome patterns, `1` = bright, ion 0 first.
    #[wasm_bindgen(getter)]
    pub fn patterns(&self) -> String {
        self.patterns.join(",")
    }

    #[wasm_bindgen(getter)]
    pub fn counts(&self) -> Vec<u32> {
        self.counts.clone()
    }

    /// Exact Born-rule probabilities for the same patterns.
    #[wasm_bindgen(getter)]
    pub fn probabilities(&self) -> Vec<f64> {
        self.probabilities.clone()
    }
}

pub fn run_circuit_impl(text: &str, shots: u32, seed: u64) -> Result<CircuitRun> {
    let circuit = parse_circuit(text)?;
    let n_ions = circuit
        .iter()
        .flat_map(|g| g.ions())
        .max()
        .map_or(1, |m| m + 1)
        .max(2);
    let spec = ChainSpec::new(n_ions, 4)?;
    let schedule = compile_circuit(&circuit, &spec)?;
    let mut state = HybridState::new_ground(spec)?;
    simulate(&mut state, &schedule)?;
    let exact = iontrap_core::readout::outcome_distribution(&state);
    let records = sample_shots(&state, seed, shots.max(1) as u64, &Detector::default())?;
    let estimates = estimate_probabilities(&records)?;
    let patterns: Vec<String> = exact.keys().cloned().collect();
    let counts = patterns
        .iter()
        .map(|p| {
            estimates
                .iter()
                .find(|e| &e.pattern == p)
                .map_or(0, |e| e.count as u32)
        })
        .collect();
    Ok(CircuitRun {
        schedule: write_schedule(&schedule),
        probabilities: patterns.iter().map(|p| exact[p]).collect(),
        patterns,
        counts,
    })
}

fn js_err(e: iontrap_core::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub fn rabi_curve(
    kind: &str,
    n: usize,
    points: usize,
    beta_max: f64,
) -> std::result::Result<Vec<f64>, JsError> {
    rabi_curve_impl(kind, n, points, beta_max).map_err(js_err)
}

#[wasm_bindgen]
pub fn doppler_trajectory(
    seed: u64,
    initial: f64,
    max_events: usize,
) -> std::result::Result<Vec<f64>, JsError> {
    doppler_trajectory_impl(seed, initial, max_events).map_err(js_err)
}

#[wasm_bindgen]
pub fn run_circuit(text: &str, shots: u32, seed: u64) -> std::result::Result<CircuitRun, JsError> {
    run_circuit_impl(text, shots, seed).map_err(js_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rabi_curves_peak_at_pi() {
        let carrier = rabi_curve_impl("CARRIER", 3, 3, 2.0 * PI).unwrap();
        assert!((carrier[1] - 1.0).abs() < 1e-12 && carrier[2] < 1e-12);
        // Red sideband on |g,4⟩ runs twice as fast (√4).
        let red = rabi_curve_impl("RSB", 4, 2, PI / 2.0).unwrap();
        assert!((red[1] - 1.0).abs() < 1e-12);
        let red_vacuum = rabi_curve_impl("RSB", 0, 5, PI).unwrap();
        assert!(red_vacuum.iter().all(|&p| p == 0.0));
        assert!(rabi_curve_impl("AUXBSB", 0, 5, PI).is_err());
    }

    #[test]
    fn doppler_trajectory_starts_at_initial_speed() {
        let v = doppler_trajectory_impl(2, 50.0, 10_000).unwrap();
        assert_eq!(v[0], 50.0);
        assert!(v.last().unwrap().abs() < 5.0);
        assert_eq!(v, doppler_trajectory_impl(2, 50.0, 10_000).unwrap());
    }

    #[test]
    fn bell_histogram() {
        let run = run_circuit_impl("BELL 0 1", 1000, 3).unwrap();
        assert_eq!(run.schedule.lines().count(), 9);
        assert_eq!(run.patterns(), "00,01,10,11");
        assert_eq!(run.counts[1] + run.counts[2], 0);
        assert_eq!(run.counts.iter().sum::<u32>(), 1000);
        assert!((run.probabilities[0] - 0.5).abs() < 1e-12);
        assert!(run_circuit_impl("CNOT 0 0", 10, 0).is_err());
    }
}
