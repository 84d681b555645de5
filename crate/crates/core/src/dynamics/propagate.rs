use std::f64::consts::TAU;

use num_complex::Complex64;

use super::hamiltonian::{Couplings, LaserDrive, Snapshot};
use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};
use crate::state::{ChainSpec, HybridState};

/// Hard cap on the number of piecewise-constant steps.
pub const MAX_STEPS: u64 = 10_000_000;

/// Largest `‖H‖·dt` handled by a single Taylor expansion; longer steps are
/// split into equal sub-steps.
const SERIES_RADIUS: f64 = 0.5;

/// 200 samples per trap period.
pub fn default_dt_max(spec: &ChainSpec) -> f64 {
    TAU / (200.0 * spec.omega_z)
}

/// `v ← exp(−i H dt) v` by a truncated power series, splitting the step so
/// each series argument has norm below [`SERIES_RADIUS`].
pub(crate) fn exp_action(h: &Snapshot, dt: f64, v: &mut [C64], term: &mut [C64], next: &mut [C64]) {
    let bound = h.norm_bound() * dt.abs();
    let substeps = ((bound / SERIES_RADIUS).ceil() as usize).max(1);
    let tau = dt / substeps as f64;
    let minus_i_tau = Complex64::new(0.0, -tau);
    for _ in 0..substeps {
        term.copy_from_slice(v);
        for k in 1..64 {
            h.apply(term, next);
            let scale = minus_i_tau / k as f64;
            let mut largest = 0.0_f64;
            for (t, n) in term.iter_mut().zip(next.iter()) {
                *t = scale * n;
                largest = largest.max(t.norm());
            }
            for (x, t) in v.iter_mut().zip(term.iter()) {
                *x += t;
            }
            if largest < 1e-18 {
                break;
            }
        }
    }
}

impl HybridState {
    /// Evolves `ion` and the shared mode under the full time-dependent
    /// interaction Hamiltonian, using midpoint-sampled piecewise-constant
    /// steps no longer than `dt_max`.
    pub fn propagate_numeric(&mut self, ion: usize, drive: &LaserDrive, dt_max: f64) -> Result<()> {
        let spec = self.spec().clone();
        spec.check_ion(ion)?;
        if !(dt_max.is_finite() && dt_max > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dt_max must be positive, got {dt_max}"
            )));
        }
        if !(drive.duration.is_finite() && drive.duration >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "drive duration must be non-negative, got {}",
                drive.duration
            )));
        }
        if drive.duration == 0.0 {
            return Ok(());
        }
        let steps_f = (drive.duration / dt_max).ceil();
        if steps_f > MAX_STEPS as f64 {
            return Err(Error::StepOverflow {
                steps: steps_f as u64,
                limit: MAX_STEPS,
            });
        }
        let steps = (steps_f as u64).max(1);
        let dt = drive.duration / steps as f64;

        let d = spec.fock_cutoff;
        let mask = spec.ion_mask(ion);
        // Each configuration of the spectator ions evolves independently.
        let blocks: Vec<Vec<usize>> = (0..spec.atomic_dim())
            .filter(|bits| bits & mask == 0)
            .map(|bits| {
                let mut idx: Vec<usize> = (0..d).map(|n| spec.flatten(bits, n)).collect();
                idx.extend((0..d).map(|n| spec.flatten(bits | mask, n)));
                idx
            })
            .collect();

        let couplings = Couplings::new(&spec, drive.omega_rabi);
        let mut v = vec![ZERO; 2 * d];
        let mut term = vec![ZERO; 2 * d];
        let mut next = vec![ZERO; 2 * d];
        let amps = self.amps_mut();
        for step in 0..steps {
            let t_mid = (step as f64 + 0.5) * dt;
            let snapshot = couplings.at(&spec, drive, t_mid);
            for idx in &blocks {
                for (slot, &i) in v.iter_mut().zip(idx) {
                    *slot = amps[i];
                }
                exp_action(&snapshot, dt, &mut v, &mut term, &mut next);
                for (slot, &i) in v.iter().zip(idx) {
                    amps[i] = *slot;
                }
            }
        }
        Ok(())
    }
}
