use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::run_rng;
use crate::{AMU, BOLTZMANN, HBAR};

/// A run stops after this many consecutive rejected absorption attempts.
pub const REJECTION_LIMIT: u32 = 1000;

/// One-dimensional Doppler cooling set-up.
///
/// Velocities are signed along `+z` and the laser propagates along `−z`, so
/// `v > 0` means the ion moves towards the laser and `v⃗·k⃗ = −k·v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DopplerParams {
    /// Ion mass in kg.
    pub mass: f64,
    /// |k⃗| of the cooling laser in rad/m.
    pub wavevector_k: f64,
    /// Transition linewidth Γ (FWHM) in rad/s.
    pub gamma_linewidth: f64,
    /// Red detuning δω > 0 in rad/s, `ω_abs = ω₀ − δω`.
    pub detuning_delta: f64,
    /// Signed initial velocity along `+z` in m/s.
    pub initial_speed: f64,
    pub seed: u64,
}

impl Default for DopplerParams {
    /// ⁴⁰Ca⁺ on the 397 nm line, detuned by Γ/2, starting at 50 ħk/M.
    fn default() -> Self {
        let mass = 40.0 * AMU;
        let wavevector_k = 2.0 * PI / 397e-9;
        let gamma_linewidth = 2.0 * PI * 21.6e6;
        DopplerParams {
            mass,
            wavevector_k,
            gamma_linewidth,
            detuning_delta: 0.5 * gamma_linewidth,
            initial_speed: 50.0 * HBAR * wavevector_k / mass,
            seed: 0,
        }
    }
}

impl DopplerParams {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64, name: &str| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive(self.mass, "mass")?;
        positive(self.wavevector_k, "wavevector_k")?;
        positive(self.gamma_linewidth, "gamma_linewidth")?;
        positive(self.detuning_delta, "detuning_delta (red detuning)")?;
        if !self.initial_speed.is_finite() {
            return Err(Error::InvalidParameter(
                "initial_speed must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Recoil velocity ħk/M.
    pub fn recoil_velocity(&self) -> f64 {
        HBAR * self.wavevector_k / self.mass
    }

    pub fn kinetic_energy(&self, v: f64) -> f64 {
        0.5 * self.mass * v * v
    }

    /// Lorentzian absorption weight (peak 1, FWHM Γ) at detuning
    /// `ω_abs − ω₀ − k⃗·v⃗`, zero for ions not moving against the beam.
    pub fn absorption_probability(&self, v: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        let x = -self.detuning_delta + self.wavevector_k * v;
        let half = 0.5 * self.gamma_linewidth;
        half * half / (x * x + half * half)
    }
}

/// Averaged kinetic-energy change per scattering event including recoil,
/// `ħ v⃗·k⃗ + ħ²k²/M`.
pub fn mean_energy_step(v: f64, p: &DopplerParams) -> f64 {
    let k = p.wavevector_k;
    -HBAR * k * v + HBAR * HBAR * k * k / p.mass
}

/// Speed ħk/M below which [`mean_energy_step`] stops being negative.
pub fn recoil_terminal_speed(p: &DopplerParams) -> f64 {
    p.recoil_velocity()
}

/// ħ²k²/2M.
pub fn recoil_energy(p: &DopplerParams) -> f64 {
    let k = p.wavevector_k;
    HBAR * HBAR * k * k / (2.0 * p.mass)
}

/// Kinetic pseudo-temperature from `(3/2) k_B T = E_K`.
pub fn pseudo_temperature(energy: f64) -> f64 {
    2.0 * energy / (3.0 * BOLTZMANN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventType {
    Absorb,
    Emit,
}

impl EventType {
    pub fn as_str(self) -> &'static str {
        match self {
            EventType::Absorb => "absorb",
            EventType::Emit => "emit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingEvent {
    pub index: usize,
    /// Velocity after the event.
    pub velocity: f64,
    pub energy: f64,
    pub kind: EventType,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoolingTrajectory {
    pub params: DopplerParams,
    pub events: Vec<CoolingEvent>,
    /// True when the run ended on [`REJECTION_LIMIT`] rather than the event cap.
    pub stalled: bool,
}

impl CoolingTrajectory {
    pub fn final_velocity(&self) -> f64 {
        self.events
            .last()
            .map_or(self.params.initial_speed, |e| e.velocity)
    }

    pub fn final_energy(&self) -> f64 {
        self.params.kinetic_energy(self.final_velocity())
    }

    /// Kinetic energy after event `i`, holding the last value past the end.
    pub fn energy_at(&self, i: usize) -> f64 {
        match self.events.get(i) {
            Some(e) => e.energy,
            None => self.final_energy(),
        }
    }

    /// `event,velocity_m_s,energy_J,type`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("event,velocity_m_s,energy_J,type\n");
        for e in &self.events {
            out.push_str(&format!(
                "{},{:e},{:e},{}\n",
                e.index,
                e.velocity,
                e.energy,
                e.kind.as_str()
            ));
        }
        out
    }
}

/// Monte Carlo absorption/emission cycles. Each absorption attempt is
/// accepted against a uniform variate with [`DopplerParams::absorption_probability`];
/// an accepted photon kicks the ion by ħk/M along the beam and is followed by
/// isotropic re-emission, projected on `z` as `(ħk/M)·u` with `u ~ U[−1, 1]`.
pub fn doppler_mc_run(p: &DopplerParams, max_events: usize) -> Result<CoolingTrajectory> {
    p.validate()?;
    if max_events == 0 {
        return Err(Error::InvalidParameter(
            "max_events must be at least 1".into(),
        ));
    }
    let mut rng = run_rng(p.seed);
    let kick = p.recoil_velocity();
    let mut v = p.initial_speed;
    let mut events = Vec::new();
    let mut rejections = 0;
    let push = |events: &mut Vec<CoolingEvent>, v: f64, kind| {
        events.push(CoolingEvent {
            index: events.len(),
            velocity: v,
            energy: p.kinetic_energy(v),
            kind,
        });
    };
    while events.len() < max_events {
        if rng.gen::<f64>() >= p.absorption_probability(v) {
            rejections += 1;
            if rejections >= REJECTION_LIMIT {
                return Ok(CoolingTrajectory {
                    params: *p,
                    events,
                    stalled: true,
                });
            }
            continue;
        }
        rejections = 0;
        v -= kick;
        push(&mut events, v, EventType::Absorb);
        if events.len() < max_events {
            v += kick * rng.gen_range(-1.0..=1.0);
            push(&mut events, v, EventType::Emit);
        }
    }
    Ok(CoolingTrajectory {
        params: *p,
        events,
        stalled: false,
    })
}

/// Independent runs, one per seed.
pub fn doppler_ensemble(
    p: &DopplerParams,
    seeds: impl IntoIterator<Item = u64>,
    max_events: usize,
) -> Result<Vec<CoolingTrajectory>> {
    seeds
        .into_iter()
        .map(|seed| doppler_mc_run(&DopplerParams { seed, ..*p }, max_events))
        .collect()
}

/// Ensemble-mean kinetic energy averaged over consecutive windows of
/// `window` events, out to the longest trajectory. Finished runs hold their
/// final energy.
pub fn windowed_mean_energy(trajectories: &[CoolingTrajectory], window: usize) -> Vec<f64> {
    assert!(window > 0);
    let horizon = trajectories
        .iter()
        .map(|t| t.events.len())
        .max()
        .unwrap_or(0);
    let windows = horizon.div_ceil(window).max(1);
    (0..windows)
        .map(|w| {
            let range = w * window..(w + 1) * window;
            let total: f64 = trajectories
                .iter()
                .map(|t| range.clone().map(|i| t.energy_at(i)).sum::<f64>() / window as f64)
                .sum();
            total / trajectories.len().max(1) as f64
        })
        .collect()
}
