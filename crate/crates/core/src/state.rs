//! The hybrid atomic ⊗ phonon state of an ion chain.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use log::warn;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{unitarity_error2, Unitary2, C64, ZERO};

/// Tolerance on `Σ|a|² = 1` accepted when a state is built from raw amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Tolerance on `U†U = I` for user-supplied 2×2 rotations.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// Above this Lamb-Dicke parameter the first-order sideband picture is shaky.
pub const ETA_WARN_THRESHOLD: f64 = 0.3;

/// Static configuration of the ion chain, trap and laser coupling.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    pub n_ions: usize,
    /// Axial trap frequency ω_z in rad/s.
    pub omega_z: f64,
    /// Lamb-Dicke parameter η.
    pub eta: f64,
    /// Carrier Rabi frequency Ω in rad/s.
    pub omega_rabi: f64,
    /// Number of phonon levels kept, `0..fock_cutoff`.
    pub fock_cutoff: usize,
    pub species_label: String,
}

impl Default for ChainSpec {
    fn default() -> Self {
        ChainSpec {
            n_ions: 2,
            omega_z: 2.0 * PI * 1.0e6,
            eta: 0.1,
            omega_rabi: 2.0 * PI * 100.0e3,
            fock_cutoff: 20,
            species_label: "Ca-40 optical".to_string(),
        }
    }
}

impl ChainSpec {
    /// Default trap and laser numbers with the given chain size and cutoff.
    pub fn new(n_ions: usize, fock_cutoff: usize) -> Result<ChainSpec> {
        let spec = ChainSpec {
            n_ions,
            fock_cutoff,
            ..ChainSpec::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_omega_rabi(mut self, omega_rabi: f64) -> Self {
        self.omega_rabi = omega_rabi;
        self
    }

    pub fn with_omega_z(mut self, omega_z: f64) -> Self {
        self.omega_z = omega_z;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSpec(msg.to_string()));
        if self.n_ions == 0 {
            return bad("n_ions must be at least 1");
        }
        if self.n_ions > 16 {
            return bad("n_ions above 16 is not supported by the dense representation");
        }
        if self.fock_cutoff < 2 {
            return bad("fock_cutoff must be at least 2");
        }
        // η = 0 is allowed: it decouples the motion, which is handy for checks.
        if !(self.eta.is_finite() && self.eta >= 0.0) {
            return bad("eta must be finite and non-negative");
        }
        if !(self.omega_rabi.is_finite() && self.omega_rabi > 0.0) {
            return bad("omega_rabi must be positive");
        }
        if !(self.omega_z.is_finite() && self.omega_z > 0.0) {
            return bad("omega_z must be positive");
        }
        if self.eta >= ETA_WARN_THRESHOLD {
            warn!(
                "Lamb-Dicke parameter {} is not small; first-order sideband model may be inaccurate",
                self.eta
            );
        }
        Ok(())
    }

    /// Number of atomic configurations, `2^N`.
    pub fn atomic_dim(&self) -> usize {
        1 << self.n_ions
    }

    /// Full Hilbert-space dimension `2^N · d`.
    pub fn dim(&self) -> usize {
        self.atomic_dim() * self.fock_cutoff
    }

    pub fn flatten(&self, bits: usize, n: usize) -> usize {
        bits * self.fock_cutoff + n
    }

    pub fn unflatten(&self, flat: usize) -> (usize, usize) {
        (flat / self.fock_cutoff, flat % self.fock_cutoff)
    }

    /// Bit mask of `ion` inside the atomic bitstring (ion 0 is the MSB).
    pub fn ion_mask(&self, ion: usize) -> usize {
        1 << (self.n_ions - 1 - ion)
    }

    pub(crate) fn check_ion(&self, ion: usize) -> Result<()> {
        if ion >= self.n_ions {
            Err(Error::IndexOutOfRange {
                index: ion,
                limit: self.n_ions,
            })
        } else {
            Ok(())
        }
    }

    /// Canonical text identifying the physical parameters.
    pub fn fingerprint(&self) -> String {
        format!(
            "n_ions={};omega_z={};eta={};omega_rabi={};fock_cutoff={}",
            self.n_ions, self.omega_z, self.eta, self.omega_rabi, self.fock_cutoff
        )
    }
}

/// Normalized pure state over `|a₁…a_N; n⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridState {
    spec: Arc<ChainSpec>,
    amps: Vec<C64>,
}

impl HybridState {
    /// `|g…g, 0⟩`.
    pub fn new_ground(spec: ChainSpec) -> Result<HybridState> {
        HybridState::basis(spec, 0, 0)
    }

    /// The basis state with atomic bitstring `bits` and phonon number `n`.
    pub fn basis(spec: ChainSpec, bits: usize, n: usize) -> Result<HybridState> {
        spec.validate()?;
        if bits >= spec.atomic_dim() {
            return Err(Error::IndexOutOfRange {
                index: bits,
                limit: spec.atomic_dim(),
            });
        }
        if n >= spec.fock_cutoff {
            return Err(Error::IndexOutOfRange {
                index: n,
                limit: spec.fock_cutoff,
            });
        }
        let mut amps = vec![ZERO; spec.dim()];
        amps[spec.flatten(bits, n)] = C64::new(1.0, 0.0);
        Ok(HybridState {
            spec: Arc::new(spec),
            amps,
        })
    }

    /// Takes amplitudes that must already be normalized within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(spec: ChainSpec, amps: Vec<C64>) -> Result<HybridState> {
        spec.validate()?;
        if amps.len() != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                actual: amps.len(),
            });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm_sqr));
        }
        let mut state = HybridState {
            spec: Arc::new(spec),
            amps,
        };
        state.renormalize();
        Ok(state)
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(spec: ChainSpec, mut amps: Vec<C64>) -> Result<HybridState> {
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !(norm_sqr > 0.0 && norm_sqr.is_finite()) {
            return Err(Error::NotNormalized(norm_sqr));
        }
        let scale = 1.0 / norm_sqr.sqrt();
        amps.iter_mut().for_each(|a| *a *= scale);
        HybridState::from_amplitudes(spec, amps)
    }

    /// Atomic amplitudes (length `2^N`) placed on phonon level `n`.
    pub fn from_atomic(spec: ChainSpec, atomic: &[C64], n: usize) -> Result<HybridState> {
        if atomic.len() != spec.atomic_dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.atomic_dim(),
                actual: atomic.len(),
            });
        }
        if n >= spec.fock_cutoff {
            return Err(Error::IndexOutOfRange {
                index: n,
                limit: spec.fock_cutoff,
            });
        }
        let mut amps = vec![ZERO; spec.dim()];
        for (bits, a) in atomic.iter().enumerate() {
            amps[spec.flatten(bits, n)] = *a;
        }
        HybridState::normalized(spec, amps)
    }

    pub fn spec(&self) -> &ChainSpec {
        &self.spec
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, bits: usize, n: usize) -> C64 {
        self.amps[self.spec.flatten(bits, n)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &HybridState) -> Result<C64> {
        self.check_same_space(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨a|b⟩|²`, blind to the global phase of either state.
    pub fn fidelity(&self, other: &HybridState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr().min(1.0))
    }

    /// Marginal probability of each phonon number.
    pub fn phonon_distribution(&self) -> Vec<f64> {
        let d = self.spec.fock_cutoff;
        let mut dist = vec![0.0; d];
        for (flat, a) in self.amps.iter().enumerate() {
            dist[flat % d] += a.norm_sqr();
        }
        dist
    }

    pub fn mean_phonon_number(&self) -> f64 {
        self.phonon_distribution()
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    /// Marginal distribution over atomic bitstrings.
    pub fn atomic_distribution(&self) -> Vec<f64> {
        let d = self.spec.fock_cutoff;
        self.amps
            .chunks(d)
            .map(|chunk| chunk.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }

    /// Multiplies the whole state by `e^{iχ}`.
    pub fn with_global_phase(mut self, chi: f64) -> HybridState {
        let rot = Complex64::from_polar(1.0, chi);
        self.amps.iter_mut().for_each(|a| *a *= rot);
        self
    }

    /// Rotates the amplitudes at the flat indices `(i, j)` by `u`:
    /// `(a_i, a_j) ← u · (a_i, a_j)`.
    pub fn apply_subspace_rotation(&mut self, pair: (usize, usize), u: &Unitary2) -> Result<()> {
        let (i, j) = pair;
        let dim = self.amps.len();
        for idx in [i, j] {
            if idx >= dim {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    limit: dim,
                });
            }
        }
        if i == j {
            return Err(Error::DegeneratePair(i));
        }
        let err = unitarity_error2(u);
        if err > UNITARY_TOLERANCE {
            return Err(Error::NotUnitary(err));
        }
        self.rotate_pair(i, j, u);
        Ok(())
    }

    /// Unchecked pair rotation used by the pulse implementations.
    pub(crate) fn rotate_pair(&mut self, i: usize, j: usize, u: &Unitary2) {
        rotate_pair(&mut self.amps, i, j, u);
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    /// Rescales to unit norm, absorbing round-off drift.
    pub(crate) fn renormalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        if norm > 0.0 {
            let scale = 1.0 / norm;
            self.amps.iter_mut().for_each(|a| *a *= scale);
        }
    }

    pub(crate) fn check_same_space(&self, other: &HybridState) -> Result<()> {
        if self.amps.len() != other.amps.len()
            || self.spec.n_ions != other.spec.n_ions
            || self.spec.fock_cutoff != other.spec.fock_cutoff
        {
            return Err(Error::DimensionMismatch {
                expected: self.amps.len(),
                actual: other.amps.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn rotate_pair(amps: &mut [C64], i: usize, j: usize, u: &Unitary2) {
    let (a, b) = (amps[i], amps[j]);
    amps[i] = u[(0, 0)] * a + u[(0, 1)] * b;
    amps[j] = u[(1, 0)] * a + u[(1, 1)] * b;
}

impl fmt::Display for HybridState {
    /// Lists the non-negligible kets, e.g. `(0.7071+0i)|gg,0⟩ + …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (flat, a) in self.amps.iter().enumerate() {
            if a.norm() < 1e-9 {
                continue;
            }
            let (bits, n) = self.spec.unflatten(flat);
            let label: String = (0..self.spec.n_ions)
                .map(|ion| {
                    if bits & self.spec.ion_mask(ion) == 0 {
                        'g'
                    } else {
                        'e'
                    }
                })
                .collect();
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({:.4}{:+.4}i)|{},{}⟩", a.re, a.im, label, n)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
