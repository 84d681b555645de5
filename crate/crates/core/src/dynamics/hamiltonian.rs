use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::linalg::{C64, ZERO};
use crate::state::ChainSpec;

/// A classical laser drive on one ion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserDrive {
    /// Δ = ω − ω₀ in rad/s.
    pub detuning: f64,
    /// Ω in rad/s.
    pub omega_rabi: f64,
    /// Laser phase φ. Sideband terms see φ̃ = φ + π/2.
    pub phase: f64,
    /// Pulse length in seconds.
    pub duration: f64,
}

impl LaserDrive {
    /// Drive tuned to the red sideband (Δ = −ω_z) whose analytic unitary has
    /// phase `phase_tilde`.
    pub fn red_sideband(
        spec: &ChainSpec,
        omega_rabi: f64,
        phase_tilde: f64,
        duration: f64,
    ) -> Self {
        LaserDrive {
            detuning: -spec.omega_z,
            omega_rabi,
            phase: phase_tilde - FRAC_PI_2,
            duration,
        }
    }

    /// Drive tuned to the blue sideband (Δ = +ω_z).
    pub fn blue_sideband(
        spec: &ChainSpec,
        omega_rabi: f64,
        phase_tilde: f64,
        duration: f64,
    ) -> Self {
        LaserDrive {
            detuning: spec.omega_z,
            omega_rabi,
            phase: phase_tilde - FRAC_PI_2,
            duration,
        }
    }

    /// Resonant carrier drive (Δ = 0).
    pub fn carrier(omega_rabi: f64, phase: f64, duration: f64) -> Self {
        LaserDrive {
            detuning: 0.0,
            omega_rabi,
            phase,
            duration,
        }
    }

    pub fn phase_tilde(&self) -> f64 {
        self.phase + FRAC_PI_2
    }
}

/// Raising-type couplings `⟨upper| H |lower⟩` of the single-ion interaction
/// Hamiltonian, grouped by resonance. Indices are into the single-ion block
/// `a·d + n`. Magnitudes are time independent; only the phases rotate.
#[derive(Debug, Clone)]
pub(crate) struct Couplings {
    pub dim: usize,
    /// `(lower, upper, magnitude)` for each term.
    carrier: Vec<(usize, usize, f64)>,
    red: Vec<(usize, usize, f64)>,
    blue: Vec<(usize, usize, f64)>,
}

/// Matrix elements at one instant, ready to apply.
pub(crate) struct Snapshot {
    pub dim: usize,
    /// `(lower, upper, ⟨upper|H|lower⟩)`; the Hermitian partner is implied.
    pub entries: Vec<(usize, usize, C64)>,
}

impl Couplings {
    pub fn new(spec: &ChainSpec, omega_rabi: f64) -> Couplings {
        let d = spec.fock_cutoff;
        let half = 0.5 * omega_rabi;
        let side = 0.5 * spec.eta * omega_rabi;
        let g = |n: usize| n;
        let e = |n: usize| d + n;
        let carrier = (0..d).map(|n| (g(n), e(n), half)).collect();
        // a σ₊ : |g,n⟩ → |e,n−1⟩ with √n.
        let red = (1..d)
            .map(|n| (g(n), e(n - 1), side * (n as f64).sqrt()))
            .collect();
        // a† σ₊ : |g,n⟩ → |e,n+1⟩ with √(n+1).
        let blue = (0..d - 1)
            .map(|n| (g(n), e(n + 1), side * ((n + 1) as f64).sqrt()))
            .collect();
        Couplings {
            dim: 2 * d,
            carrier,
            red,
            blue,
        }
    }

    pub fn at(&self, spec: &ChainSpec, drive: &LaserDrive, t: f64) -> Snapshot {
        let phi = drive.phase;
        let phi_t = drive.phase_tilde();
        let carrier_phase = Complex64::from_polar(1.0, -(drive.detuning * t - phi));
        let red_phase = Complex64::from_polar(1.0, -(drive.detuning + spec.omega_z) * t + phi_t);
        let blue_phase = Complex64::from_polar(1.0, -(drive.detuning - spec.omega_z) * t + phi_t);
        let mut entries = Vec::with_capacity(self.carrier.len() + self.red.len() + self.blue.len());
        for (terms, phase) in [
            (&self.carrier, carrier_phase),
            (&self.red, red_phase),
            (&self.blue, blue_phase),
        ] {
            entries.extend(
                terms
                    .iter()
                    .filter(|(_, _, m)| *m != 0.0)
                    .map(|&(lo, hi, m)| (lo, hi, phase * m)),
            );
        }
        Snapshot {
            dim: self.dim,
            entries,
        }
    }
}

impl Snapshot {
    /// `out = H · v`.
    pub fn apply(&self, v: &[C64], out: &mut [C64]) {
        out.iter_mut().for_each(|x| *x = ZERO);
        for &(lo, hi, h) in &self.entries {
            out[hi] += h * v[lo];
            out[lo] += h.conj() * v[hi];
        }
    }

    /// Upper bound on the induced 1-norm.
    pub fn norm_bound(&self) -> f64 {
        let mut col = vec![0.0; self.dim];
        for &(lo, hi, h) in &self.entries {
            col[lo] += h.norm();
            col[hi] += h.norm();
        }
        col.into_iter().fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::from_element(self.dim, self.dim, ZERO);
        for &(lo, hi, h) in &self.entries {
            m[(hi, lo)] += h;
            m[(lo, hi)] += h.conj();
        }
        m
    }
}

/// Interaction-picture Hamiltonian `H_I(t)/ħ` (rad/s) on one ion's
/// `{g, e} ⊗ phonon` block, indexed `a·d + n`. All three resonances are kept:
///
/// ```text
/// H_I/ħ = Ω/2  (σ₊ e^{−i(Δt−φ)}            + h.c.)
///       + ηΩ/2 (a σ₊ e^{−i(Δ+ω_z)t + iφ̃}   + h.c.)
///       + ηΩ/2 (a† σ₊ e^{−i(Δ−ω_z)t + iφ̃}  + h.c.)
/// ```
pub fn full_interaction_hamiltonian(spec: &ChainSpec, drive: &LaserDrive, t: f64) -> DMatrix<C64> {
    Couplings::new(spec, drive.omega_rabi)
        .at(spec, drive, t)
        .to_dense()
}
